"""Setup and Key_Gen.

Randomness is drawn from an injected ``rng`` (anything with
``randrange``) in a fixed order: setup draws alpha, beta, q, k; keygen
draws r, then r_j for the attributes in sorted order.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Tuple

from algebra.groups import get_suite
from algebra.scalars import Scalar
from core.exceptions import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PublicKey:
    suite_id: str
    g: Any
    h: Any
    egg_alpha: Any


@dataclass(frozen=True)
class MasterKey:
    beta: Scalar
    g_alpha: Any
    q: Scalar
    k: Scalar

    def __post_init__(self):
        for name in ('beta', 'q', 'k'):
            if getattr(self, name).is_zero():
                raise ArgumentError(f'master key component {name} is zero')


@dataclass(frozen=True)
class EncryptionContext:
    """What the data owner is provisioned with: PK plus q and k."""

    pk: PublicKey
    q: Scalar
    k: Scalar

    @classmethod
    def from_master(cls, pk, mk):
        return cls(pk=pk, q=mk.q, k=mk.k)


@dataclass(frozen=True)
class SecretKey:
    D: Any
    D_hat: Any
    components: Dict[str, Tuple[Any, Any]]

    @property
    def attrs(self) -> FrozenSet[str]:
        return frozenset(self.components)

    def component(self, attribute):
        return self.components.get(attribute)


def setup(rng):
    suite = get_suite()
    alpha = suite.random_scalar(rng)
    beta = suite.random_scalar(rng)
    q = suite.random_scalar(rng)
    k = suite.random_scalar(rng)
    g = suite.g
    g_alpha = suite.exp(g, alpha)
    pk = PublicKey(suite_id=suite.suite_id, g=g, h=suite.exp(g, beta),
                   egg_alpha=suite.pair(g, g_alpha))
    mk = MasterKey(beta=beta, g_alpha=g_alpha, q=q, k=k)
    logger.info('setup complete for suite %s', suite.suite_id)
    return pk, mk


def keygen(pk, mk, attrs, rng):
    attrs = frozenset(attrs)
    if not attrs:
        raise ArgumentError('attribute set must not be empty')
    suite = get_suite()
    g = pk.g
    r = suite.random_scalar(rng)
    g_r = suite.exp(g, r)
    D = suite.exp(mk.g_alpha * g_r, mk.beta.inverse())
    D_hat = suite.exp(g, r * mk.q)
    components = {}
    for attribute in sorted(attrs):
        r_j = suite.random_scalar(rng)
        components[attribute] = (
            g_r * suite.exp(suite.hash_to_g0('Hatt', attribute), r_j),
            suite.exp(g, r_j),
        )
    logger.info('issued key for %d attributes', len(components))
    return SecretKey(D=D, D_hat=D_hat, components=components)
