"""Latency model of the two-stage (compute, transmit) pipeline.

Encryption side: block i is encrypted, then transmitted; transmission
of block i overlaps encryption of block i + 1.  Decryption side is the
mirror image: block i arrives, then is decrypted while block i + 1 is
on the wire.  One worker per stage, FIFO, no reordering.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from core.constants import SCHEDULE_COLUMNS
from core.exceptions import ArgumentError
from core.utils import preparation_csv


class Side(str, Enum):
    ENC = 'enc'
    DEC = 'dec'


@dataclass(frozen=True)
class StageTimes:
    """Per-block durations in seconds: ET_i, TT_i and DT_i."""

    et: Tuple[float, ...]
    tt: Tuple[float, ...]
    dt: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'et', tuple(self.et))
        object.__setattr__(self, 'tt', tuple(self.tt))
        object.__setattr__(self, 'dt', tuple(self.dt) or (0,) * len(self.tt))
        if not self.tt:
            raise ArgumentError('stage times need at least one block')
        if not len(self.et) == len(self.tt) == len(self.dt):
            raise ArgumentError('stage time lists differ in length')
        if any(value < 0 for value in self.et + self.tt + self.dt):
            raise ArgumentError('stage durations must be non-negative')

    @classmethod
    def uniform(cls, n, et, tt, dt=0):
        return cls(et=(et,) * n, tt=(tt,) * n, dt=(dt,) * n)

    @property
    def n(self):
        return len(self.tt)

    @property
    def et_total(self):
        return sum(self.et)

    @property
    def tt_total(self):
        return sum(self.tt)

    @property
    def dt_total(self):
        return sum(self.dt)

    def stages(self, side):
        """(first stage, second stage) durations for ``side``."""
        if Side(side) is Side.ENC:
            return self.et, self.tt
        return self.tt, self.dt


@dataclass(frozen=True)
class BlockSchedule:
    block: int
    enc_start: Optional[float] = None
    enc_end: Optional[float] = None
    tx_start: Optional[float] = None
    tx_end: Optional[float] = None
    dec_start: Optional[float] = None
    dec_end: Optional[float] = None

    def as_row(self):
        return {column: getattr(self, column) for column in SCHEDULE_COLUMNS}


@dataclass(frozen=True)
class ScheduleResult:
    side: Side
    blocks: Tuple[BlockSchedule, ...]
    total_sequential: float
    total_pipelined: float

    @property
    def delta_t(self):
        return self.total_sequential - self.total_pipelined

    def export_csv(self, path):
        preparation_csv(path, SCHEDULE_COLUMNS,
                        [block.as_row() for block in self.blocks])


def sequential_total_enc(times):
    return times.et_total + times.tt_total


def sequential_total_dec(times):
    return times.tt_total + times.dt_total


def sequential_total(times, side):
    if Side(side) is Side.ENC:
        return sequential_total_enc(times)
    return sequential_total_dec(times)


def two_stage_schedule(first, second):
    """Start/finish instants of a two-stage FIFO pipeline.

    F_i = F_{i-1} + first_i, S_i = max(S_{i-1}, F_i) + second_i.
    """
    first_done = second_done = 0
    instants = []
    for first_duration, second_duration in zip(first, second):
        first_start = first_done
        first_done = first_done + first_duration
        second_start = max(second_done, first_done)
        second_done = second_start + second_duration
        instants.append(
            (first_start, first_done, second_start, second_done))
    return instants


def schedule_result(times, side, instants):
    side = Side(side)
    blocks = []
    for index, (first_start, first_end, second_start, second_end) in (
            enumerate(instants, start=1)):
        if side is Side.ENC:
            blocks.append(BlockSchedule(
                block=index, enc_start=first_start, enc_end=first_end,
                tx_start=second_start, tx_end=second_end))
        else:
            blocks.append(BlockSchedule(
                block=index, tx_start=first_start, tx_end=first_end,
                dec_start=second_start, dec_end=second_end))
    return ScheduleResult(
        side=side,
        blocks=tuple(blocks),
        total_sequential=sequential_total(times, side),
        total_pipelined=instants[-1][3],
    )


def pipelined_total_enc(times):
    return schedule_result(times, Side.ENC,
                           two_stage_schedule(*times.stages(Side.ENC)))


def pipelined_total_dec(times):
    return schedule_result(times, Side.DEC,
                           two_stage_schedule(*times.stages(Side.DEC)))


def pipelined_total(times, side):
    if Side(side) is Side.ENC:
        return pipelined_total_enc(times)
    return pipelined_total_dec(times)


def delta_t(times, side):
    return pipelined_total(times, side).delta_t


def approximate_total(times, side):
    """Closed form of the pipelined total picked by stage dominance.

    Encryption: ET_1 + TT_M when every TT_i >= ET_i, otherwise
    ET_M + TT_n.  Decryption: TT_M + DT_n when every TT_i >= DT_i,
    otherwise TT_1 + DT_M.  Exact for uniform per-block durations.
    """
    if Side(side) is Side.ENC:
        if all(tt >= et for et, tt in zip(times.et, times.tt)):
            return times.et[0] + times.tt_total
        return times.et_total + times.tt[-1]
    if all(tt >= dt for tt, dt in zip(times.tt, times.dt)):
        return times.tt_total + times.dt[-1]
    return times.tt[0] + times.dt_total
