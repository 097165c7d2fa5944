import logging
from dataclasses import dataclass
from typing import Any

from algebra.groups import get_suite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerificationTuple:
    V1: Any
    V2: Any


def data_verification(message, mk):
    suite = get_suite()
    return suite.exp(suite.hash_to_g0('Hv', bytes(message)), mk.k)


def make_challenge(commitment, mk, rng):
    suite = get_suite()
    t = suite.random_scalar(rng)
    return VerificationTuple(V1=suite.exp(commitment, t / mk.k),
                             V2=suite.exp(suite.g, t))


def verify_message(message, challenge):
    suite = get_suite()
    left = suite.pair(suite.hash_to_g0('Hv', bytes(message)), challenge.V2)
    verified = left == suite.pair(challenge.V1, suite.g)
    logger.info('verification %s', 'passed' if verified else 'failed')
    return verified
