import dataclasses

from django.test import SimpleTestCase

from core.exceptions import ArgumentError, InternalStateError
from core.utils import xor_bytes
from scheme.encryption import decode_sec, encrypt_block, sentinel_sec
from scheme.tests.fixtures import SchemeFixture

MESSAGE = b'level partitioned message body'


class EncryptBlockTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=21)

    def unmask(self, ctb):
        suite = self.fixture.suite
        key = suite.pair(ctb.c, suite.exp(
            suite.g, self.fixture.alpha / self.fixture.beta))
        payload = xor_bytes(ctb.c_tilde,
                            suite.kdf_mask(key, len(ctb.c_tilde)))
        length = ctb.header.block_length
        return payload[:length], payload[length:]

    def test_depth_one_policy(self):
        encryptor, ctbs = self.fixture.encrypt('a', MESSAGE)
        self.assertEqual(len(ctbs), 1)
        ctb = ctbs[0]
        self.assertEqual(len(ctb.leaf_components), 1)
        self.assertEqual(ctb.delta_components, {})
        self.assertIsNotNone(ctb.commitment)
        self.assertTrue(ctb.is_last)
        block, sec = self.unmask(ctb)
        self.assertEqual(block, MESSAGE)
        self.assertEqual(sec, sentinel_sec())
        self.assertIsNone(decode_sec(sec))

    def test_sentinel_is_g0_identity(self):
        suite = self.fixture.suite
        sentinel = sentinel_sec()
        self.assertEqual(sentinel, suite.encode_g0(suite.g0_identity))
        self.assertEqual(len(sentinel), suite.g0_length)
        self.assertNotEqual(sentinel, suite.encode_g0(suite.g))

    def test_two_level_policy(self):
        encryptor, ctbs = self.fixture.encrypt('(a AND b)', MESSAGE)
        first, second = ctbs
        self.assertEqual(first.leaf_components, {})
        self.assertEqual(first.delta_components, {})
        self.assertEqual(len(second.leaf_components), 2)
        self.assertEqual(second.delta_components, {})
        self.assertIsNone(second.commitment)

    def test_sec_and_level_elements(self):
        suite, q = self.fixture.suite, self.fixture.q
        encryptor, ctbs = self.fixture.encrypt('(a AND (b OR c))', MESSAGE)
        secrets = encryptor.state.secrets
        for ctb in ctbs:
            s_i = secrets[ctb.index]
            self.assertEqual(ctb.c, suite.exp(self.fixture.pk.h, s_i))
            block, sec = self.unmask(ctb)
            self.assertEqual(block, encryptor.blocks[ctb.index - 1].payload)
            if ctb.is_last:
                self.assertEqual(sec, sentinel_sec())
            else:
                self.assertEqual(decode_sec(sec), suite.exp(
                    suite.g, secrets[ctb.index + 1] / q))

    def test_linking_elements(self):
        suite, q = self.fixture.suite, self.fixture.q
        encryptor, ctbs = self.fixture.encrypt('(a AND (b OR c))', MESSAGE)
        state = encryptor.state
        self.assertEqual(list(ctbs[1].delta_components), [3])
        self.assertEqual(
            ctbs[1].delta_components[3],
            suite.exp(suite.g, (state.secrets[2] - state.shares[3]) / q))
        self.assertEqual(ctbs[2].delta_components, {})

    def test_shares_follow_parent_polynomials(self):
        suite = self.fixture.suite
        encryptor, ctbs = self.fixture.encrypt(
            '(2 of (a, b, (c AND d)))', MESSAGE)
        state = encryptor.state
        root = encryptor.tree.root
        self.assertEqual(state.shares[root.node_id], state.secrets[1])
        self.assertEqual(state.polynomials[root.node_id].degree, 1)
        for child in root.children:
            self.assertEqual(state.shares[child.node_id],
                             state.polynomials[root.node_id](child.index))
        for ctb in ctbs:
            for node_id, (c_hat, c_hat_prime) in ctb.leaf_components.items():
                share = state.shares[node_id]
                attribute = ctb.descriptor.node(node_id).attribute
                self.assertEqual(c_hat, suite.exp(suite.g, share))
                self.assertEqual(c_hat_prime, suite.exp(
                    suite.hash_to_g0('Hatt', attribute), share))

    def test_commitment_only_in_first_block(self):
        encryptor, ctbs = self.fixture.encrypt('(a AND (b OR c))', MESSAGE)
        self.assertEqual(ctbs[0].commitment, encryptor.state.commitment)
        self.assertTrue(all(ctb.commitment is None for ctb in ctbs[1:]))
        with self.assertRaises(ArgumentError):
            dataclasses.replace(ctbs[0], commitment=None)
        with self.assertRaises(ArgumentError):
            dataclasses.replace(ctbs[1], commitment=ctbs[0].commitment)

    def test_header(self):
        encryptor, ctbs = self.fixture.encrypt('(a AND b)', b'abcde',
                                               message_id=bytes(16))
        header = ctbs[0].header
        self.assertEqual(header.count, 2)
        self.assertEqual(header.message_length, 5)
        self.assertEqual(header.block_length, 3)
        self.assertEqual(encryptor.message_id, '0' * 32)
        self.assertTrue(all(ctb.header == header for ctb in ctbs))

    def test_missing_pending_share(self):
        encryptor = self.fixture.encryptor('(a AND b)', MESSAGE)
        with self.assertRaises(InternalStateError):
            encryptor.encrypt_block(encryptor.blocks[1])

    def test_block_level_mismatch(self):
        encryptor = self.fixture.encryptor('(a AND b)', MESSAGE)
        with self.assertRaises(ArgumentError):
            encrypt_block(encryptor.blocks[0], encryptor.partition.slice(2),
                          self.fixture.context, encryptor.state,
                          self.fixture.rng)
