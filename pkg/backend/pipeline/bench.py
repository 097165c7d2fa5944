"""Message-size sweep of the encryption-transmission and
transmission-decryption pipelines."""
import logging
import os
import statistics
from dataclasses import asdict, dataclass
from typing import Tuple

from core.constants import BENCH_COLUMNS
from core.exceptions import AccessDenied, ArgumentError
from core.utils import preparation_csv, preparation_gnuplot
from pipeline.executor import run_pipeline
from pipeline.timing import Side
from policy.generators import layered_policy
from policy.grammar import parse_policy
from scheme.decryption import MessageDecryptor
from scheme.encryption import MessageEncryptor
from scheme.keys import EncryptionContext, keygen, setup
from scheme.wire import decode_ctb, encode_ctb

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchRow:
    size: int
    blocks: int
    enc_sequential: float
    enc_pipelined: float
    enc_delta: float
    dec_sequential: float
    dec_pipelined: float
    dec_delta: float
    enc_elapsed: float
    dec_elapsed: float


@dataclass(frozen=True)
class BenchReport:
    rows: Tuple[BenchRow, ...]

    def __post_init__(self):
        sizes = [row.size for row in self.rows]
        if any(left >= right for left, right in zip(sizes, sizes[1:])):
            raise ArgumentError('benchmark sizes must be strictly increasing')

    def export_csv(self, path):
        preparation_csv(path, BENCH_COLUMNS,
                        [asdict(row) for row in self.rows])

    def export_gnuplot(self, path):
        preparation_gnuplot(path, BENCH_COLUMNS,
                            [asdict(row) for row in self.rows])


def _encrypt_once(context, tree, message, link, rng):
    encryptor = MessageEncryptor(context, tree, message, rng)
    return run_pipeline(
        encryptor.blocks, link, Side.ENC,
        worker=lambda block: encode_ctb(encryptor.encrypt_block(block)),
    )


def _decrypt_once(sk, payloads, link, message):
    decryptor = MessageDecryptor(sk)
    run = run_pipeline(
        payloads, link, Side.DEC,
        worker=lambda payload: decryptor.receive(decode_ctb(payload)),
    )
    if decryptor.result() != message:
        raise AccessDenied('benchmark key failed to recover the message')
    return run


def run_benchmark(sizes, levels, leaves, link, rng, runs=5):
    """Median sequential and pipelined totals per message size.

    The sequential and pipelined columns come from the closed
    recurrences fed with the measured per-block durations; the
    ``*_elapsed`` columns are the measured wall-clock totals.
    """
    sizes = sorted(sizes)
    if runs < 1:
        raise ArgumentError('runs must be at least 1')
    tree = parse_policy(layered_policy(levels, leaves))
    pk, mk = setup(rng)
    context = EncryptionContext.from_master(pk, mk)
    sk = keygen(pk, mk, tree.attributes(), rng)
    rows = []
    for size in sizes:
        message = os.urandom(size)
        samples = []
        for _ in range(runs):
            enc = _encrypt_once(context, tree, message, link, rng)
            dec = _decrypt_once(sk, enc.outputs, link, message)
            enc_result, dec_result = enc.predicted(), dec.predicted()
            samples.append((
                enc_result.total_sequential, enc_result.total_pipelined,
                enc_result.delta_t,
                dec_result.total_sequential, dec_result.total_pipelined,
                dec_result.delta_t,
                enc.elapsed, dec.elapsed,
            ))
        medians = [statistics.median(column) for column in zip(*samples)]
        row = BenchRow(size, tree.depth, *medians)
        logger.info('size %d, %d blocks: enc delta %.6fs, dec delta %.6fs',
                    size, row.blocks, row.enc_delta, row.dec_delta)
        rows.append(row)
    return BenchReport(rows=tuple(rows))
