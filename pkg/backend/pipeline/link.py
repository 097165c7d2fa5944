import logging
import random
import time

from django.conf import settings

from core.exceptions import ArgumentError

logger = logging.getLogger(__name__)


class LinkModel:
    """Single simulated channel: TT = size / bandwidth + latency.

    ``jitter`` adds a uniform draw from [0, jitter) seconds per
    transfer, reproducible through ``seed``.
    """

    def __init__(self, bandwidth, latency=0.0, jitter=0.0, seed=None):
        if bandwidth <= 0:
            raise ArgumentError('link bandwidth must be positive')
        if latency < 0 or jitter < 0:
            raise ArgumentError('link latency and jitter must be '
                                'non-negative')
        self.bandwidth = float(bandwidth)
        self.latency = float(latency)
        self.jitter = float(jitter)
        self.seed = seed
        self._random = random.Random(seed)
        if jitter:
            logger.warning('link jitter %.6fs makes transfer times '
                           'non-deterministic across seeds', jitter)

    @classmethod
    def from_settings(cls, bandwidth=None, latency=None):
        return cls(
            bandwidth=settings.LINK_BANDWIDTH if bandwidth is None
            else bandwidth,
            latency=settings.LINK_LATENCY if latency is None else latency,
        )

    def transfer_time(self, size):
        duration = size / self.bandwidth + self.latency
        if self.jitter:
            duration += self._random.uniform(0, self.jitter)
        return duration

    def transmit(self, size):
        """Occupy the channel for ``size`` bytes; returns the time slept."""
        duration = self.transfer_time(size)
        time.sleep(duration)
        return duration

    def __repr__(self):
        return (f'LinkModel(bandwidth={self.bandwidth}, '
                f'latency={self.latency}, jitter={self.jitter})')
