"""Pairing-friendly group suite.

The suite exposes a symmetric pairing ``e: G0 x G0 -> GT`` over a
charm-crypto ``PairingGroup``.  Elements of G0 and GT are charm
``Element`` objects; exponents are :class:`algebra.scalars.Scalar`.
Encodings are fixed-length per type and canonical: decoding re-encodes
and rejects anything that does not reproduce the input.
"""
import base64
import functools
import hashlib
import logging

from charm.toolbox.pairinggroup import G1, GT, ZR, PairingGroup
from charm.toolbox.pairinggroup import pair as charm_pair
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes
from cryptography.hazmat.primitives.kdf.hkdf import HKDF
from django.conf import settings

from algebra.scalars import Scalar, byte_length
from core.constants import HASH_DOMAINS
from core.exceptions import ArgumentError, DecodeError

logger = logging.getLogger(__name__)

SYMMETRIC_SUITES = ('SS512', 'SS1024')
GENERATOR_TAG = b'gen'
MASK_INFO = b'lcws kdf mask v1'
MASK_KEY_LENGTH = 32
MASK_NONCE = bytes(16)


class GroupSuite:

    def __init__(self, suite_id):
        if suite_id not in SYMMETRIC_SUITES:
            raise ArgumentError(f'unsupported pairing suite {suite_id!r}')
        self.suite_id = suite_id
        self.group = PairingGroup(suite_id)
        self.order = int(self.group.order())
        self.scalar_length = byte_length(self.order)
        self._g0_prefix = self.group.serialize(
            self.group.hash('probe', G1)).split(b':', 1)[0]
        self.g = self._hash_to_g0(GENERATOR_TAG, suite_id.encode('ascii'))
        self.g0_identity = self.g ** self.group.init(ZR, 0)
        self.egg = charm_pair(self.g, self.g)
        self.gt_identity = self.egg ** self.group.init(ZR, 0)
        self._gt_prefix = self.group.serialize(self.egg).split(b':', 1)[0]
        self.g0_length = len(self.encode_g0(self.g))
        self.gt_length = len(self.encode_gt(self.egg))
        logger.debug('pairing suite %s ready: %s', suite_id, self.manifest())

    def manifest(self):
        return {
            'suite': self.suite_id,
            'scalar': self.scalar_length,
            'g0': self.g0_length,
            'gt': self.gt_length,
        }

    def scalar(self, value):
        return Scalar(value, self.order)

    def random_scalar(self, rng):
        return Scalar(rng.randrange(1, self.order), self.order)

    def exp(self, element, exponent):
        return element ** self.group.init(ZR, int(exponent) % self.order)

    def pair(self, u, v):
        if u == self.g0_identity or v == self.g0_identity:
            return self.gt_identity
        return charm_pair(u, v)

    def hash_to_g0(self, domain_tag, msg):
        if isinstance(domain_tag, str):
            domain_tag = domain_tag.encode('ascii')
        if domain_tag not in HASH_DOMAINS:
            raise ArgumentError(f'unknown hash domain {domain_tag!r}')
        return self._hash_to_g0(domain_tag, msg)

    def _hash_to_g0(self, domain_tag, msg):
        if isinstance(msg, str):
            msg = msg.encode('utf-8')
        digest = hashlib.sha256(
            len(domain_tag).to_bytes(1, 'big') + domain_tag + msg
        ).hexdigest()
        return self.group.hash(
            f'{self.suite_id}:{domain_tag.decode("ascii")}:{digest}', G1
        )

    def kdf_mask(self, k_gt, out_len):
        if out_len <= 0:
            raise ArgumentError('mask length must be positive')
        key = HKDF(
            algorithm=hashes.SHA256(),
            length=MASK_KEY_LENGTH,
            salt=None,
            info=MASK_INFO + self.suite_id.encode('ascii'),
        ).derive(self.encode_gt(k_gt))
        encryptor = Cipher(algorithms.AES(key), modes.CTR(MASK_NONCE)).encryptor()
        return encryptor.update(bytes(out_len)) + encryptor.finalize()

    def encode_scalar(self, scalar):
        return Scalar(int(scalar), self.order).to_bytes()

    def decode_scalar(self, data):
        return Scalar.from_bytes(bytes(data), self.order)

    def encode_g0(self, element):
        return self._encode(element)

    def decode_g0(self, data):
        return self._decode(data, self._g0_prefix, self.g0_length, 'G0')

    def encode_gt(self, element):
        return self._encode(element)

    def decode_gt(self, data):
        return self._decode(data, self._gt_prefix, self.gt_length, 'GT')

    def _encode(self, element):
        return base64.b64decode(self.group.serialize(element).split(b':', 1)[1])

    def _decode(self, data, prefix, length, name):
        data = bytes(data)
        if len(data) != length:
            raise DecodeError(
                f'{name} encoding must be {length} bytes, got {len(data)}'
            )
        try:
            element = self.group.deserialize(
                prefix + b':' + base64.b64encode(data)
            )
        except Exception as exc:
            raise DecodeError(f'invalid {name} encoding') from exc
        if element is None or element is False:
            raise DecodeError(f'invalid {name} encoding')
        if not self.group.ismember(element):
            raise DecodeError(f'{name} encoding is not a group member')
        if self._encode(element) != data:
            raise DecodeError(f'{name} encoding is not canonical')
        return element


@functools.lru_cache(maxsize=None)
def suite_for(suite_id):
    return GroupSuite(suite_id)


def get_suite():
    return suite_for(settings.PAIRING_SUITE)
