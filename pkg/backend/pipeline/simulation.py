import logging

import simpy

from pipeline.timing import Side, schedule_result

logger = logging.getLogger(__name__)


def simulate(times, side):
    """Discrete-event run of the two-stage pipeline for ``times``.

    The first stage hands finished blocks to the second through an
    unbounded FIFO store, so the result matches the recurrence of
    ``pipelined_total``.
    """
    side = Side(side)
    first, second = times.stages(side)
    env = simpy.Environment()
    handoff = simpy.Store(env)
    instants = [[None] * 4 for _ in range(times.n)]

    def first_stage():
        for index, duration in enumerate(first):
            instants[index][0] = env.now
            yield env.timeout(duration)
            instants[index][1] = env.now
            yield handoff.put(index)

    def second_stage():
        for _ in range(times.n):
            index = yield handoff.get()
            instants[index][2] = env.now
            yield env.timeout(second[index])
            instants[index][3] = env.now

    env.process(first_stage())
    env.process(second_stage())
    env.run()
    logger.debug('simulated %s side of %d blocks, finished at %s',
                 side.value, times.n, env.now)
    return schedule_result(times, side, [tuple(row) for row in instants])
