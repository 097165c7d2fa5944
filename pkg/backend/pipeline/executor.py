"""Threaded two-stage executor.

The first stage runs on a worker thread and hands results to the
second stage through a bounded FIFO queue; with ``overlap=False`` both
stages run back to back on the calling thread.
"""
import logging
import queue
import threading
import time
from dataclasses import dataclass
from typing import Any, Tuple

from django.conf import settings

from core.exceptions import ArgumentError, OutsourcingError, PipelineError
from pipeline.timing import (ScheduleResult, Side, StageTimes,
                             pipelined_total, schedule_result)

logger = logging.getLogger(__name__)

_DONE = object()
_POLL_INTERVAL = 0.05


@dataclass(frozen=True)
class PipelineRun:
    side: Side
    times: StageTimes
    schedule: ScheduleResult
    outputs: Tuple[Any, ...]

    @property
    def elapsed(self):
        return self.schedule.total_pipelined

    def predicted(self):
        """The recurrence fed with the measured per-block durations."""
        return pipelined_total(self.times, self.side)


def _stages(side, link, worker, sink):
    if side is Side.ENC:
        def transmit(index, payload):
            link.transmit(len(payload))
            if sink is not None:
                sink(index, payload)
            return payload
        return (lambda index, item: worker(item)), transmit

    def receive(index, payload):
        link.transmit(len(payload))
        return payload
    return receive, (lambda index, payload: worker(payload))


def _call(stage, index, argument):
    try:
        return stage(index, argument)
    except Exception as exc:
        error = PipelineError(index, f'{type(exc).__name__}: {exc}')
        if isinstance(exc, OutsourcingError):
            error.exit_code = exc.exit_code
        raise error from exc


class _Recorder:

    def __init__(self, count):
        self.started = time.perf_counter()
        self.instants = [[None] * 4 for _ in range(count)]

    def timed(self, slot, stage, index, argument):
        row = self.instants[index - 1]
        row[slot] = time.perf_counter() - self.started
        try:
            return _call(stage, index, argument)
        finally:
            row[slot + 1] = time.perf_counter() - self.started


def run_pipeline(items, link, side, worker, sink=None, overlap=True,
                 queue_size=None):
    """Push ``items`` through compute and transmit stages.

    ``side`` 'enc': ``worker`` turns an item into wire bytes, which are
    then sent over ``link`` and handed to ``sink(index, payload)``.
    ``side`` 'dec': items are wire bytes, received over ``link`` and
    then passed to ``worker``.  Items are numbered from 1 in order.
    """
    side = Side(side)
    items = list(items)
    if not items:
        raise ArgumentError('the pipeline needs at least one block')
    first, second = _stages(side, link, worker, sink)
    recorder = _Recorder(len(items))
    outputs = []

    if not overlap:
        for index, item in enumerate(items, start=1):
            payload = recorder.timed(0, first, index, item)
            outputs.append(recorder.timed(2, second, index, payload))
    else:
        handoff = queue.Queue(
            maxsize=queue_size or settings.PIPELINE_QUEUE_SIZE)
        stop = threading.Event()

        def put(entry):
            while not stop.is_set():
                try:
                    handoff.put(entry, timeout=_POLL_INTERVAL)
                    return True
                except queue.Full:
                    continue
            return False

        def produce():
            for index, item in enumerate(items, start=1):
                try:
                    entry = (index, recorder.timed(0, first, index, item),
                             None)
                except PipelineError as exc:
                    put((index, None, exc))
                    return
                if not put(entry):
                    return
            put(_DONE)

        producer = threading.Thread(target=produce, daemon=True,
                                    name=f'pipeline-{side.value}')
        producer.start()
        try:
            while True:
                entry = handoff.get()
                if entry is _DONE:
                    break
                index, payload, error = entry
                if error is not None:
                    raise error
                outputs.append(recorder.timed(2, second, index, payload))
        finally:
            stop.set()
            producer.join()

    durations = [(row[1] - row[0], row[3] - row[2])
                 for row in recorder.instants]
    first_times = tuple(duration[0] for duration in durations)
    second_times = tuple(duration[1] for duration in durations)
    zeros = (0.0,) * len(items)
    if side is Side.ENC:
        times = StageTimes(et=first_times, tt=second_times, dt=zeros)
    else:
        times = StageTimes(et=zeros, tt=first_times, dt=second_times)
    schedule = schedule_result(
        times, side, [tuple(row) for row in recorder.instants])
    elapsed = schedule.total_pipelined
    logger.debug('%s pipeline of %d blocks: %.6fs (sequential %.6fs)',
                 side.value, len(items), elapsed, schedule.total_sequential)
    return PipelineRun(side=side, times=times, schedule=schedule,
                       outputs=tuple(outputs))
