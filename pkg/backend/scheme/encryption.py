"""Per-level block encryption (Data_Partition + DB_Encryption).

For level i the encryptor samples the level secret s_i, gives every
gate x of the level a random polynomial q_x of degree k_x - 1 whose
constant term is the share handed down by its parent (s_1 for the
root), queues q_x(index(child)) for the children, and emits

    C~_i = (DB_i || Sec_{i+1}) xor KDF(e(g,g)^{alpha s_i})
    C_i = h^{s_i}
    dC_{i,j} = g^{(s_i - q_j(0)) / q}        for every gate j, i >= 2
    C^_{i,y} = g^{q_y(0)}, C^'_{i,y} = H_att(att(y))^{q_y(0)}

with Sec_{i+1} = g^{s_{i+1} / q}, or the all-zero sentinel at i = n.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from algebra.groups import get_suite
from algebra.scalars import Scalar
from core.constants import Limits
from core.exceptions import ArgumentError, InternalStateError
from core.utils import xor_bytes
from policy.partition import LevelDescriptor, partition_levels
from policy.shares import Polynomial
from scheme.blocks import block_length_for, partition_message
from scheme.verification import data_verification

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MessageHeader:
    message_id: bytes
    count: int
    message_length: int
    block_length: int
    suite_id: str


@dataclass(frozen=True)
class CiphertextBlock:
    header: MessageHeader
    index: int
    descriptor: LevelDescriptor
    c_tilde: bytes
    c: Any
    delta_components: Dict[int, Any] = field(default_factory=dict)
    leaf_components: Dict[int, Tuple[Any, Any]] = field(default_factory=dict)
    commitment: Optional[Any] = None

    def __post_init__(self):
        if self.index == 1:
            if self.commitment is None or self.delta_components:
                raise ArgumentError(
                    'CTB_1 carries the commitment and no linking elements')
        elif self.commitment is not None:
            raise ArgumentError('only CTB_1 carries the commitment')

    @property
    def is_last(self):
        return self.index == self.header.count


@dataclass
class EncryptionState:
    header: MessageHeader
    commitment: Any
    secrets: Dict[int, Scalar] = field(default_factory=dict)
    pending: Dict[int, Scalar] = field(default_factory=dict)
    shares: Dict[int, Scalar] = field(default_factory=dict)
    polynomials: Dict[int, Polynomial] = field(default_factory=dict)

    def level_secret(self, level, rng):
        if level not in self.secrets:
            self.secrets[level] = get_suite().random_scalar(rng)
        return self.secrets[level]

    def take_share(self, node_id):
        try:
            return self.pending.pop(node_id)
        except KeyError:
            raise InternalStateError(
                f'no pending share for node {node_id}') from None


def sentinel_sec():
    suite = get_suite()
    return suite.encode_g0(suite.g0_identity)


def encode_sec(element):
    if element is None:
        return sentinel_sec()
    return get_suite().encode_g0(element)


def decode_sec(data):
    if bytes(data) == sentinel_sec():
        return None
    return get_suite().decode_g0(data)


def encrypt_block(block, level_slice, context, state, rng):
    suite = get_suite()
    pk = context.pk
    level = level_slice.level
    if block.index != level:
        raise ArgumentError(
            f'block {block.index} does not match level {level}')
    s_i = state.level_secret(level, rng)
    q_inverse = context.q.inverse()

    delta_components = {}
    for node in level_slice.interior_nodes:
        if node.parent_id is None:
            share = s_i
        else:
            share = state.take_share(node.node_id)
        polynomial = Polynomial.random(share, node.threshold - 1, rng,
                                       suite.order)
        state.polynomials[node.node_id] = polynomial
        state.shares[node.node_id] = share
        for child in node.children:
            state.pending[child.node_id] = polynomial(child.index)
        if level >= 2:
            delta_components[node.node_id] = suite.exp(
                pk.g, (s_i - share) * q_inverse)

    leaf_components = {}
    for node in level_slice.leaf_nodes:
        share = state.take_share(node.node_id)
        state.shares[node.node_id] = share
        leaf_components[node.node_id] = (
            suite.exp(pk.g, share),
            suite.exp(suite.hash_to_g0('Hatt', node.attribute), share),
        )

    sec_next = None
    if level < state.header.count:
        s_next = state.level_secret(level + 1, rng)
        sec_next = suite.exp(pk.g, s_next * q_inverse)
    payload = block.payload + encode_sec(sec_next)
    mask = suite.kdf_mask(suite.exp(pk.egg_alpha, s_i), len(payload))

    logger.debug('level %d: %d gates, %d leaves', level,
                 len(level_slice.interior_nodes), len(leaf_components))
    return CiphertextBlock(
        header=state.header,
        index=level,
        descriptor=level_slice.descriptor,
        c_tilde=xor_bytes(payload, mask),
        c=suite.exp(pk.h, s_i),
        delta_components=delta_components,
        leaf_components=leaf_components,
        commitment=state.commitment if level == 1 else None,
    )


class MessageEncryptor:
    """Drives encrypt_block over one message, level by level.

    Iterating yields the CTBs in index order; ``state`` keeps s_i and
    every polynomial so that the hand-off to level i + 1 exists before
    CTB_i leaves.
    """

    def __init__(self, context, tree, message, rng, message_id=None):
        message = bytes(message)
        self.context = context
        self.tree = tree
        self.rng = rng
        self.partition = partition_levels(tree)
        count = len(self.partition)
        if message_id is None:
            message_id = rng.randrange(
                1 << (8 * Limits.MESSAGE_ID_LENGTH.value)
            ).to_bytes(Limits.MESSAGE_ID_LENGTH.value, 'big')
        self.blocks = partition_message(message, count)
        self.state = EncryptionState(
            header=MessageHeader(
                message_id=message_id,
                count=count,
                message_length=len(message),
                block_length=block_length_for(len(message), count),
                suite_id=context.pk.suite_id,
            ),
            commitment=data_verification(message, context),
        )

    @property
    def header(self):
        return self.state.header

    @property
    def message_id(self):
        return self.state.header.message_id.hex()

    def encrypt_block(self, block):
        return encrypt_block(block, self.partition.slice(block.index),
                             self.context, self.state, self.rng)

    def __iter__(self):
        for block in self.blocks:
            yield self.encrypt_block(block)
