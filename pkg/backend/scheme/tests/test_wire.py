import copy
import os
import random
import stat
import struct
import tempfile

from django.test import SimpleTestCase

from core.exceptions import ArgumentError, DecodeError, ObjectNotFound
from policy.generators import random_policy
from scheme.tests.fixtures import SchemeFixture
from scheme.verification import make_challenge
from scheme.wire import (decode_challenge, decode_context, decode_ctb,
                         decode_master_key, decode_public_key,
                         decode_secret_key, encode_challenge, encode_context,
                         encode_ctb, encode_master_key, encode_public_key,
                         encode_secret_key, read_key_file, write_key_file)

GOLDEN_FILE = os.path.join(os.path.dirname(__file__), 'golden',
                           'ctb_seed.bin')
GOLDEN_SEED = 20240501
GOLDEN_POLICY = '(a AND (b OR (2 of (c, d, e))))'
GOLDEN_MESSAGE = b'golden wire message, fixed seed and message id'
GOLDEN_RECORD_ENV = 'RECORD_GOLDEN_WIRE'


def golden_blob():
    fixture = SchemeFixture(seed=GOLDEN_SEED)
    _, ctbs = fixture.encrypt(GOLDEN_POLICY, GOLDEN_MESSAGE,
                              message_id=bytes(range(16)))
    return b''.join(struct.pack('>I', len(data)) + data
                    for data in map(encode_ctb, ctbs))


class WireCtbTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=61)
        cls.encryptor, cls.ctbs = cls.fixture.encrypt(
            '(a AND (b OR c))', b'wire format payload')

    def test_round_trip(self):
        for ctb in self.ctbs:
            data = encode_ctb(ctb)
            parsed = decode_ctb(data)
            self.assertEqual(parsed, ctb)
            self.assertEqual(encode_ctb(parsed), data)

    def test_random_corpus(self):
        rng = random.Random(62)
        for _ in range(5):
            policy = random_policy(rng, max_depth=4, max_leaves=8)
            _, ctbs = self.fixture.encrypt(policy, os.urandom(
                rng.randint(1, 500)))
            for ctb in ctbs:
                data = encode_ctb(ctb)
                self.assertEqual(encode_ctb(decode_ctb(data)), data)

    def test_layout_prefix(self):
        data = encode_ctb(self.ctbs[1])
        self.assertEqual(data[:4], b'LCWS')
        self.assertEqual(data[4], 1)
        suite_length = struct.unpack('>I', data[5:9])[0]
        self.assertEqual(data[9:9 + suite_length], b'SS512')
        offset = 9 + suite_length
        self.assertEqual(data[offset:offset + 16],
                         self.ctbs[1].header.message_id)
        index, count, flags = struct.unpack(
            '>IIB', data[offset + 16:offset + 25])
        self.assertEqual((index, count, flags), (2, 3, 0))

    def test_flags(self):
        first = encode_ctb(self.ctbs[0])
        last = encode_ctb(self.ctbs[-1])
        offset = 9 + len(b'SS512') + 16 + 8
        self.assertEqual(first[offset], 0x01)
        self.assertEqual(last[offset], 0x02)

    def test_unknown_version(self):
        data = bytearray(encode_ctb(self.ctbs[0]))
        data[4] = 2
        with self.assertRaises(DecodeError):
            decode_ctb(bytes(data))

    def test_bad_magic(self):
        data = encode_ctb(self.ctbs[0])
        with self.assertRaises(DecodeError):
            decode_ctb(b'XXXX' + data[4:])

    def test_trailing_and_truncated(self):
        data = encode_ctb(self.ctbs[0])
        with self.assertRaises(DecodeError):
            decode_ctb(data + b'\x00')
        for cut in (3, 20, len(data) // 2, len(data) - 1):
            with self.assertRaises(DecodeError):
                decode_ctb(data[:cut])

    def test_inconsistent_flags(self):
        data = bytearray(encode_ctb(self.ctbs[1]))
        data[9 + len(b'SS512') + 16 + 8] = 0x02
        with self.assertRaises(DecodeError):
            decode_ctb(bytes(data))

    def test_first_block_with_linking_elements(self):
        forged = copy.copy(self.ctbs[0])
        object.__setattr__(forged, 'delta_components',
                           dict(self.ctbs[1].delta_components))
        with self.assertRaises(DecodeError) as ctx:
            decode_ctb(encode_ctb(forged))
        self.assertIsInstance(ctx.exception.__cause__, ArgumentError)

    def test_encoding_is_deterministic_per_seed(self):
        self.assertEqual(golden_blob(), golden_blob())

    def test_golden_file(self):
        blob = golden_blob()
        if os.getenv(GOLDEN_RECORD_ENV) == '1':
            with open(GOLDEN_FILE, 'wb') as f:
                f.write(blob)
        if not os.path.exists(GOLDEN_FILE):
            self.fail(f'{GOLDEN_FILE} is missing, record it with '
                      f'{GOLDEN_RECORD_ENV}=1')
        with open(GOLDEN_FILE, 'rb') as f:
            self.assertEqual(f.read(), blob)


class KeyFileTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=63)
        cls.sk, _ = cls.fixture.keygen({'b', 'a', 'c'})

    def test_round_trips(self):
        fixture = self.fixture
        self.assertEqual(decode_public_key(encode_public_key(fixture.pk)),
                         fixture.pk)
        self.assertEqual(decode_master_key(encode_master_key(fixture.mk)),
                         fixture.mk)
        self.assertEqual(decode_context(encode_context(fixture.context)),
                         fixture.context)
        self.assertEqual(decode_secret_key(encode_secret_key(self.sk)),
                         self.sk)
        commitment = self.fixture.encrypt('a', b'x')[1][0].commitment
        challenge = make_challenge(commitment, fixture.mk, fixture.rng)
        self.assertEqual(decode_challenge(encode_challenge(challenge)),
                         challenge)

    def test_zero_master_component_is_a_decode_error(self):
        mk = copy.copy(self.fixture.mk)
        object.__setattr__(mk, 'beta', self.fixture.suite.scalar(0))
        with self.assertRaises(DecodeError) as ctx:
            decode_master_key(encode_master_key(mk))
        self.assertIsInstance(ctx.exception.__cause__, ArgumentError)

    def test_magic_is_checked(self):
        with self.assertRaises(DecodeError):
            decode_secret_key(encode_public_key(self.fixture.pk))
        with self.assertRaises(DecodeError):
            decode_master_key(encode_context(self.fixture.context))

    def test_trailing_bytes(self):
        with self.assertRaises(DecodeError):
            decode_public_key(encode_public_key(self.fixture.pk) + b'\x00')

    def test_private_file_mode(self):
        with tempfile.TemporaryDirectory() as directory:
            private = os.path.join(directory, 'master.key')
            public = os.path.join(directory, 'public.key')
            write_key_file(private, encode_master_key(self.fixture.mk),
                           private=True)
            write_key_file(public, encode_public_key(self.fixture.pk))
            self.assertEqual(stat.S_IMODE(os.stat(private).st_mode), 0o600)
            self.assertEqual(decode_public_key(read_key_file(public)),
                             self.fixture.pk)

    def test_missing_file(self):
        with tempfile.TemporaryDirectory() as directory:
            with self.assertRaises(ObjectNotFound):
                read_key_file(os.path.join(directory, 'absent.key'))
