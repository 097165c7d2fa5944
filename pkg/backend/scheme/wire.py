"""Bit-exact binary layouts for CTBs and key material.

Integers are big-endian; every variable-length field carries a 4-byte
length prefix.  A WireCTB is

    "LCWS" | version:u8 | suite | message_id(16) | index:u32 | count:u32
    | flags:u8 | header | descriptor | C~ | C | [commitment]
    | linking elements | leaf components

where header = message_length:u64 block_length:u32, linking elements =
count:u32 (node_id:u32 element)*, leaf components = count:u32
(node_id:u32 element element)*, each of them length-prefixed, entries
sorted by node id.  Key files share the same framing with their own
magic.
"""
import logging
import os
import struct

from algebra.groups import get_suite
from core.constants import KEY_FILE_MAGIC, WIRE_MAGIC, Limits, WireFlags
from core.exceptions import (ArgumentError, DecodeError, ObjectNotFound,
                             StoreError)
from policy.partition import LevelDescriptor
from scheme.encryption import CiphertextBlock, MessageHeader
from scheme.keys import EncryptionContext, MasterKey, PublicKey, SecretKey
from scheme.verification import VerificationTuple

logger = logging.getLogger(__name__)

_U8 = struct.Struct('>B')
_U32 = struct.Struct('>I')
_HEADER = struct.Struct('>QI')


class Writer:

    def __init__(self):
        self.parts = []

    def raw(self, data):
        self.parts.append(bytes(data))
        return self

    def u8(self, value):
        return self.raw(_U8.pack(value))

    def u32(self, value):
        return self.raw(_U32.pack(value))

    def section(self, data):
        data = bytes(data)
        return self.u32(len(data)).raw(data)

    def getvalue(self):
        return b''.join(self.parts)


class Reader:

    def __init__(self, data):
        self.data = memoryview(bytes(data))
        self.offset = 0

    def raw(self, length):
        end = self.offset + length
        if end > len(self.data):
            raise DecodeError('truncated input')
        chunk = self.data[self.offset:end].tobytes()
        self.offset = end
        return chunk

    def u8(self):
        return _U8.unpack(self.raw(_U8.size))[0]

    def u32(self):
        return _U32.unpack(self.raw(_U32.size))[0]

    def section(self):
        return self.raw(self.u32())

    def finish(self):
        if self.offset != len(self.data):
            raise DecodeError('trailing bytes after the last section')


def _open(reader, magic, version):
    if reader.raw(len(magic)) != magic:
        raise DecodeError('bad magic')
    found = reader.u8()
    if found != version:
        raise DecodeError(f'unsupported format version {found}')
    suite_id = reader.section().decode('ascii', errors='replace')
    if suite_id != get_suite().suite_id:
        raise DecodeError(f'artifact uses suite {suite_id!r}')
    return suite_id


def _start(magic, version):
    return Writer().raw(magic).u8(version).section(
        get_suite().suite_id.encode('ascii'))


def encode_ctb(ctb):
    suite = get_suite()
    header = ctb.header
    flags = 0
    if ctb.commitment is not None:
        flags |= WireFlags.HAS_COMMITMENT
    if ctb.is_last:
        flags |= WireFlags.HAS_SENTINEL_SEC
    writer = _start(WIRE_MAGIC, Limits.WIRE_VERSION)
    writer.raw(header.message_id).u32(ctb.index).u32(header.count).u8(flags)
    writer.section(_HEADER.pack(header.message_length, header.block_length))
    writer.section(ctb.descriptor.to_bytes())
    writer.section(ctb.c_tilde)
    writer.section(suite.encode_g0(ctb.c))
    if ctb.commitment is not None:
        writer.section(suite.encode_g0(ctb.commitment))

    linking = Writer().u32(len(ctb.delta_components))
    for node_id in sorted(ctb.delta_components):
        linking.u32(node_id).section(
            suite.encode_g0(ctb.delta_components[node_id]))
    writer.section(linking.getvalue())

    leaves = Writer().u32(len(ctb.leaf_components))
    for node_id in sorted(ctb.leaf_components):
        c_hat, c_hat_prime = ctb.leaf_components[node_id]
        leaves.u32(node_id).section(suite.encode_g0(c_hat)).section(
            suite.encode_g0(c_hat_prime))
    writer.section(leaves.getvalue())
    return writer.getvalue()


def decode_ctb(data):
    suite = get_suite()
    reader = Reader(data)
    suite_id = _open(reader, WIRE_MAGIC, Limits.WIRE_VERSION)
    message_id = reader.raw(Limits.MESSAGE_ID_LENGTH)
    index, count, flags = reader.u32(), reader.u32(), reader.u8()
    if flags & ~(WireFlags.HAS_COMMITMENT | WireFlags.HAS_SENTINEL_SEC):
        raise DecodeError(f'unknown flags {flags:#x}')
    if not 1 <= index <= count:
        raise DecodeError(f'block index {index} outside 1..{count}')
    if bool(flags & WireFlags.HAS_COMMITMENT) != (index == 1):
        raise DecodeError('commitment flag does not match block index')
    if bool(flags & WireFlags.HAS_SENTINEL_SEC) != (index == count):
        raise DecodeError('sentinel flag does not match block index')
    header_bytes = reader.section()
    if len(header_bytes) != _HEADER.size:
        raise DecodeError('malformed block header')
    message_length, block_length = _HEADER.unpack(header_bytes)
    header = MessageHeader(message_id=message_id, count=count,
                           message_length=message_length,
                           block_length=block_length, suite_id=suite_id)
    descriptor = LevelDescriptor.from_bytes(reader.section())
    if descriptor.level != index:
        raise DecodeError('descriptor level does not match block index')
    c_tilde = reader.section()
    c = suite.decode_g0(reader.section())
    commitment = None
    if flags & WireFlags.HAS_COMMITMENT:
        commitment = suite.decode_g0(reader.section())

    linking_reader = Reader(reader.section())
    delta_components = {}
    for _ in range(linking_reader.u32()):
        node_id = linking_reader.u32()
        delta_components[node_id] = suite.decode_g0(linking_reader.section())
    linking_reader.finish()

    leaf_reader = Reader(reader.section())
    leaf_components = {}
    for _ in range(leaf_reader.u32()):
        node_id = leaf_reader.u32()
        leaf_components[node_id] = (
            suite.decode_g0(leaf_reader.section()),
            suite.decode_g0(leaf_reader.section()),
        )
    leaf_reader.finish()
    reader.finish()

    if list(delta_components) != sorted(delta_components) or list(
            leaf_components) != sorted(leaf_components):
        raise DecodeError('components are not sorted by node id')
    try:
        return CiphertextBlock(
            header=header, index=index, descriptor=descriptor,
            c_tilde=c_tilde, c=c, delta_components=delta_components,
            leaf_components=leaf_components, commitment=commitment,
        )
    except ArgumentError as exc:
        raise DecodeError(str(exc)) from exc


def encode_public_key(pk):
    suite = get_suite()
    return (_start(KEY_FILE_MAGIC['public'], Limits.KEY_FILE_VERSION)
            .section(suite.encode_g0(pk.g))
            .section(suite.encode_g0(pk.h))
            .section(suite.encode_gt(pk.egg_alpha))
            .getvalue())


def decode_public_key(data):
    suite = get_suite()
    reader = Reader(data)
    suite_id = _open(reader, KEY_FILE_MAGIC['public'],
                     Limits.KEY_FILE_VERSION)
    pk = PublicKey(suite_id=suite_id,
                   g=suite.decode_g0(reader.section()),
                   h=suite.decode_g0(reader.section()),
                   egg_alpha=suite.decode_gt(reader.section()))
    reader.finish()
    if pk.g != suite.g:
        raise DecodeError('public key uses a foreign generator')
    return pk


def encode_master_key(mk):
    suite = get_suite()
    return (_start(KEY_FILE_MAGIC['master'], Limits.KEY_FILE_VERSION)
            .section(suite.encode_scalar(mk.beta))
            .section(suite.encode_g0(mk.g_alpha))
            .section(suite.encode_scalar(mk.q))
            .section(suite.encode_scalar(mk.k))
            .getvalue())


def decode_master_key(data):
    suite = get_suite()
    reader = Reader(data)
    _open(reader, KEY_FILE_MAGIC['master'], Limits.KEY_FILE_VERSION)
    try:
        mk = MasterKey(beta=suite.decode_scalar(reader.section()),
                       g_alpha=suite.decode_g0(reader.section()),
                       q=suite.decode_scalar(reader.section()),
                       k=suite.decode_scalar(reader.section()))
    except ArgumentError as exc:
        raise DecodeError(str(exc)) from exc
    reader.finish()
    return mk


def encode_context(context):
    suite = get_suite()
    return (_start(KEY_FILE_MAGIC['context'], Limits.KEY_FILE_VERSION)
            .section(encode_public_key(context.pk))
            .section(suite.encode_scalar(context.q))
            .section(suite.encode_scalar(context.k))
            .getvalue())


def decode_context(data):
    suite = get_suite()
    reader = Reader(data)
    _open(reader, KEY_FILE_MAGIC['context'], Limits.KEY_FILE_VERSION)
    context = EncryptionContext(pk=decode_public_key(reader.section()),
                                q=suite.decode_scalar(reader.section()),
                                k=suite.decode_scalar(reader.section()))
    reader.finish()
    if context.q.is_zero() or context.k.is_zero():
        raise DecodeError('encryption context holds a zero scalar')
    return context


def encode_secret_key(sk):
    suite = get_suite()
    writer = (_start(KEY_FILE_MAGIC['secret'], Limits.KEY_FILE_VERSION)
              .section(suite.encode_g0(sk.D))
              .section(suite.encode_g0(sk.D_hat))
              .u32(len(sk.components)))
    for attribute in sorted(sk.components):
        d_j, d_j_prime = sk.components[attribute]
        writer.section(attribute.encode('utf-8'))
        writer.section(suite.encode_g0(d_j)).section(suite.encode_g0(d_j_prime))
    return writer.getvalue()


def decode_secret_key(data):
    suite = get_suite()
    reader = Reader(data)
    _open(reader, KEY_FILE_MAGIC['secret'], Limits.KEY_FILE_VERSION)
    d = suite.decode_g0(reader.section())
    d_hat = suite.decode_g0(reader.section())
    components = {}
    for _ in range(reader.u32()):
        try:
            attribute = reader.section().decode('utf-8')
        except UnicodeDecodeError as exc:
            raise DecodeError('attribute is not valid UTF-8') from exc
        if not attribute or attribute in components:
            raise DecodeError('empty or repeated attribute')
        components[attribute] = (suite.decode_g0(reader.section()),
                                 suite.decode_g0(reader.section()))
    reader.finish()
    if list(components) != sorted(components):
        raise DecodeError('attributes are not sorted')
    return SecretKey(D=d, D_hat=d_hat, components=components)


def encode_challenge(challenge):
    suite = get_suite()
    return (_start(KEY_FILE_MAGIC['challenge'], Limits.KEY_FILE_VERSION)
            .section(suite.encode_g0(challenge.V1))
            .section(suite.encode_g0(challenge.V2))
            .getvalue())


def decode_challenge(data):
    suite = get_suite()
    reader = Reader(data)
    _open(reader, KEY_FILE_MAGIC['challenge'], Limits.KEY_FILE_VERSION)
    challenge = VerificationTuple(V1=suite.decode_g0(reader.section()),
                                  V2=suite.decode_g0(reader.section()))
    reader.finish()
    return challenge


def write_key_file(path, data, private=False):
    mode = 0o600 if private else 0o644
    try:
        descriptor = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC,
                             mode)
        with os.fdopen(descriptor, 'wb') as f:
            f.write(data)
        os.chmod(path, mode)
    except OSError as exc:
        raise StoreError(f'cannot write {path}: {exc.strerror}') from exc
    logger.debug('wrote %s (%d bytes)', path, len(data))


def read_key_file(path):
    try:
        with open(path, 'rb') as f:
            return f.read()
    except FileNotFoundError:
        raise ObjectNotFound(f'missing key file {path}') from None
    except OSError as exc:
        raise StoreError(f'cannot read {path}: {exc.strerror}') from exc
