"""Three-stage decryption: leaves, gates, blocks; then Decrypt_M.

A CTB_i is opened with A = e(g,g)^{r s_i}, obtained from one of

* F_R for i = 1 (the root polynomial has q_R(0) = s_1),
* F_j * e(dC_{i,j}, D^) for any gate j of level i with a known value,
* e(Sec_i, D^) once CTB_{i-1} has been opened,

after which e(C_i, D) / A = e(g,g)^{alpha s_i} is the mask key.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from algebra.groups import get_suite
from core.exceptions import ArgumentError, DecodeError, FormatError
from core.utils import xor_bytes
from policy.partition import LevelDescriptor, NodeSpec, rebuild_tree
from policy.shares import lagrange_coeff
from scheme.blocks import DataBlock, unchain
from scheme.encryption import CiphertextBlock, MessageHeader, decode_sec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootUnlock:
    value: Any


@dataclass(frozen=True)
class GateUnlock:
    node_id: int
    value: Any


@dataclass(frozen=True)
class SecUnlock:
    sec: Any


@dataclass
class DecryptionState:
    header: Optional[MessageHeader] = None
    pending_blocks: Dict[int, CiphertextBlock] = field(default_factory=dict)
    data_blocks: Dict[int, DataBlock] = field(default_factory=dict)
    secs: Dict[int, Any] = field(default_factory=dict)
    node_values: Dict[int, Any] = field(default_factory=dict)
    descriptors: Dict[int, LevelDescriptor] = field(default_factory=dict)
    nodes: Dict[int, NodeSpec] = field(default_factory=dict)
    children: Dict[int, List[NodeSpec]] = field(
        default_factory=lambda: defaultdict(list))

    def add(self, ctb):
        if self.header is None:
            self.header = ctb.header
        elif ctb.header != self.header:
            raise ArgumentError(
                f'block {ctb.index} belongs to a different message')
        if ctb.index in self.descriptors:
            raise ArgumentError(f'block {ctb.index} received twice')
        self.pending_blocks[ctb.index] = ctb
        self.descriptors[ctb.index] = ctb.descriptor
        for spec in ctb.descriptor.nodes:
            self.nodes[spec.node_id] = spec
            if spec.parent_id is not None:
                self.children[spec.parent_id].append(spec)

    def record(self, block, sec_next):
        self.data_blocks[block.index] = block
        self.pending_blocks.pop(block.index, None)
        if sec_next is not None:
            self.secs[block.index + 1] = sec_next

    def complete(self):
        return (self.header is not None
                and len(self.descriptors) == self.header.count)


def decrypt_leaf(ctb, sk, node_id):
    spec = ctb.descriptor.node(node_id)
    if (spec is None or not spec.is_leaf
            or node_id not in ctb.leaf_components):
        raise ArgumentError(f'node {node_id} is not a leaf of block '
                            f'{ctb.index}')
    component = sk.component(spec.attribute)
    if component is None:
        return None
    suite = get_suite()
    d_j, d_j_prime = component
    c_hat, c_hat_prime = ctb.leaf_components[node_id]
    return suite.pair(d_j, c_hat) / suite.pair(d_j_prime, c_hat_prime)


def decrypt_interior(children, threshold):
    available = {index: value for index, value in children.items()
                 if value is not None}
    if len(available) < threshold:
        return None
    suite = get_suite()
    chosen = sorted(available)[:threshold]
    result = suite.gt_identity
    for index in chosen:
        coefficient = lagrange_coeff(index, chosen, 0, suite.order)
        result = result * suite.exp(available[index], coefficient)
    return result


def decrypt_block(ctb, sk, unlock):
    suite = get_suite()
    if isinstance(unlock, SecUnlock):
        a = suite.pair(unlock.sec, sk.D_hat)
    elif isinstance(unlock, GateUnlock):
        linking = ctb.delta_components.get(unlock.node_id)
        if linking is None:
            raise ArgumentError(f'gate {unlock.node_id} has no linking '
                                f'element in block {ctb.index}')
        a = unlock.value * suite.pair(linking, sk.D_hat)
    elif isinstance(unlock, RootUnlock):
        if ctb.index != 1:
            raise ArgumentError('the root value only opens CTB_1')
        a = unlock.value
    else:
        raise ArgumentError(f'unknown unlock {unlock!r}')

    header = ctb.header
    if len(ctb.c_tilde) != header.block_length + suite.g0_length:
        raise DecodeError(f'block {ctb.index} has inconsistent framing')
    mask_key = suite.pair(ctb.c, sk.D) / a
    payload = xor_bytes(ctb.c_tilde,
                        suite.kdf_mask(mask_key, len(ctb.c_tilde)))
    block = DataBlock(index=ctb.index,
                      payload=payload[:header.block_length])
    if ctb.is_last:
        return block, None
    return block, decode_sec(payload[header.block_length:])


def assemble_message(state, sk):
    if 1 not in state.data_blocks or not state.complete():
        return None
    for index in sorted(state.pending_blocks):
        sec = state.secs.get(index)
        if sec is None:
            return None
        block, sec_next = decrypt_block(state.pending_blocks[index], sk,
                                        SecUnlock(sec))
        state.record(block, sec_next)
    message = b''.join(unchain(state.data_blocks.values()))
    return message[:state.header.message_length]


class MessageDecryptor:
    """Single owner of a DecryptionState; apply arrivals with receive()."""

    def __init__(self, sk):
        self.sk = sk
        self.state = DecryptionState()

    def receive(self, ctb):
        self.state.add(ctb)
        for node_id in sorted(ctb.leaf_components):
            value = decrypt_leaf(ctb, self.sk, node_id)
            if value is not None:
                self.state.node_values[node_id] = value
        self._evaluate_gates()
        self._open_blocks()

    def _evaluate_gates(self):
        state = self.state
        progress = True
        while progress:
            progress = False
            for spec in list(state.nodes.values()):
                if spec.is_leaf or spec.node_id in state.node_values:
                    continue
                children = {
                    child.index: state.node_values[child.node_id]
                    for child in state.children[spec.node_id]
                    if child.node_id in state.node_values
                }
                value = decrypt_interior(children, spec.threshold)
                if value is not None:
                    state.node_values[spec.node_id] = value
                    progress = True

    def _unlocks(self, ctb):
        state = self.state
        if ctb.index == 1:
            root = next((spec for spec in ctb.descriptor.gates()
                         if spec.parent_id is None), None)
            if root is not None and root.node_id in state.node_values:
                yield RootUnlock(state.node_values[root.node_id])
        for node_id in sorted(ctb.delta_components):
            if node_id in state.node_values:
                yield GateUnlock(node_id, state.node_values[node_id])
        if ctb.index in state.secs:
            yield SecUnlock(state.secs[ctb.index])

    def _open_blocks(self):
        state = self.state
        progress = True
        while progress:
            progress = False
            for index in sorted(state.pending_blocks):
                ctb = state.pending_blocks[index]
                for unlock in self._unlocks(ctb):
                    try:
                        block, sec_next = decrypt_block(ctb, self.sk, unlock)
                    except FormatError as exc:
                        logger.warning('block %d: %s unlock failed: %s',
                                       index, type(unlock).__name__, exc)
                        continue
                    logger.debug('block %d opened via %s', index,
                                 type(unlock).__name__)
                    state.record(block, sec_next)
                    progress = True
                    break

    def result(self):
        return assemble_message(self.state, self.sk)

    def policy(self):
        return rebuild_tree(self.state.descriptors.values())
