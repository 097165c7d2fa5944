import dataclasses

from django.test import SimpleTestCase

from core.exceptions import ArgumentError
from policy.grammar import parse_policy
from scheme.decryption import (DecryptionState, GateUnlock, RootUnlock,
                               SecUnlock, assemble_message, decrypt_block,
                               decrypt_interior, decrypt_leaf)
from scheme.keys import SecretKey
from scheme.tests.fixtures import SchemeFixture

MESSAGE = b'0123456789abcdef' * 9 + b'tail'


class DecryptLeafTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=31)
        cls.encryptor, cls.ctbs = cls.fixture.encrypt('(a AND b)', MESSAGE)
        cls.sk, cls.r = cls.fixture.keygen({'a'})

    def test_leaf_value(self):
        ctb = self.ctbs[1]
        value = decrypt_leaf(ctb, self.sk, 2)
        share = self.encryptor.state.shares[2]
        self.assertEqual(value, self.fixture.egg_power(self.r * share))

    def test_missing_attribute(self):
        self.assertIsNone(decrypt_leaf(self.ctbs[1], self.sk, 3))

    def test_not_a_leaf(self):
        with self.assertRaises(ArgumentError):
            decrypt_leaf(self.ctbs[0], self.sk, 1)
        with self.assertRaises(ArgumentError):
            decrypt_leaf(self.ctbs[1], self.sk, 99)

    def test_independent_of_attribute_randomness(self):
        suite, g = self.fixture.suite, self.fixture.pk.g
        hashed = suite.hash_to_g0('Hatt', 'a')
        g_r = suite.exp(g, self.r)
        values = []
        for r_j in (5, 77):
            sk = SecretKey(
                D=self.sk.D, D_hat=self.sk.D_hat,
                components={'a': (g_r * suite.exp(hashed, r_j),
                                  suite.exp(g, r_j))},
            )
            values.append(decrypt_leaf(self.ctbs[1], sk, 2))
        self.assertEqual(values[0], values[1])


class DecryptInteriorTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=32)

    def test_single_child(self):
        value = self.fixture.egg_power(42)
        self.assertEqual(decrypt_interior({1: value}, 1), value)

    def test_two_of_two_interpolation(self):
        # q_x(x) = 5 + 2x, r = 3
        children = {1: self.fixture.egg_power(3 * 7),
                    2: self.fixture.egg_power(3 * 9)}
        self.assertEqual(decrypt_interior(children, 2),
                         self.fixture.egg_power(15))

    def test_any_subset_interpolates_alike(self):
        children = {index: self.fixture.egg_power(3 * (5 + 2 * index))
                    for index in (1, 2, 3)}
        expected = self.fixture.egg_power(15)
        self.assertEqual(decrypt_interior(children, 2), expected)
        self.assertEqual(decrypt_interior({2: children[2], 3: children[3]},
                                          2), expected)

    def test_insufficient_children(self):
        self.assertIsNone(decrypt_interior({1: self.fixture.egg_power(1)},
                                           2))
        self.assertIsNone(decrypt_interior({1: None, 2: None}, 1))
        self.assertIsNone(decrypt_interior({}, 1))


class UnlockAlgebraTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=33)
        cls.sk, cls.r = cls.fixture.keygen({'a'})

    def test_linking_path(self):
        suite, q, r = self.fixture.suite, self.fixture.q, self.r
        delta = suite.exp(suite.g, suite.scalar(5) / q)
        unlocked = (self.fixture.egg_power(r * 4)
                    * suite.pair(delta, self.sk.D_hat))
        self.assertEqual(unlocked, self.fixture.egg_power(r * 9))

    def test_sec_path(self):
        suite, q, r = self.fixture.suite, self.fixture.q, self.r
        sec = suite.exp(suite.g, suite.scalar(9) / q)
        self.assertEqual(suite.pair(sec, self.sk.D_hat),
                         self.fixture.egg_power(r * 9))


class MessageDecryptorTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=34)
        cls.policy = '(x AND (b OR c))'
        cls.encryptor, cls.ctbs = cls.fixture.encrypt(cls.policy, MESSAGE)

    def test_round_trip(self):
        sk, _ = self.fixture.keygen({'x', 'c'})
        decryptor = self.fixture.decrypt(sk, self.ctbs)
        self.assertEqual(decryptor.result(), MESSAGE)
        self.assertEqual(decryptor.policy(), parse_policy(self.policy))

    def test_reverse_arrival_order(self):
        sk, _ = self.fixture.keygen({'x', 'b', 'c'})
        decryptor = self.fixture.decrypt(sk, reversed(self.ctbs))
        self.assertEqual(decryptor.result(), MESSAGE)

    def test_partial_decryption_without_root(self):
        sk, _ = self.fixture.keygen({'b'})
        decryptor = self.fixture.decrypt(sk, self.ctbs)
        state = decryptor.state
        self.assertNotIn(1, state.data_blocks)
        self.assertEqual(state.data_blocks[2].payload,
                         self.encryptor.blocks[1].payload)
        self.assertEqual(state.data_blocks[3].payload,
                         self.encryptor.blocks[2].payload)
        self.assertIsNone(decryptor.result())

    def test_unauthorized_key(self):
        sk, _ = self.fixture.keygen({'x'})
        decryptor = self.fixture.decrypt(sk, self.ctbs)
        self.assertEqual(decryptor.state.data_blocks, {})
        self.assertIsNone(decryptor.result())

    def test_incomplete_message(self):
        sk, _ = self.fixture.keygen({'x', 'b'})
        decryptor = self.fixture.decrypt(sk, self.ctbs[:2])
        self.assertIsNone(decryptor.result())

    def test_duplicate_and_foreign_blocks(self):
        sk, _ = self.fixture.keygen({'x', 'b'})
        decryptor = self.fixture.decrypt(sk, self.ctbs[:1])
        with self.assertRaises(ArgumentError):
            decryptor.receive(self.ctbs[0])
        _, other = self.fixture.encrypt(self.policy, MESSAGE)
        with self.assertRaises(ArgumentError):
            decryptor.receive(other[1])


class SecChainTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=35)
        cls.encryptor, cls.ctbs = cls.fixture.encrypt(
            '(a AND (b OR (c AND (d OR e))))', MESSAGE)
        cls.sk, _ = cls.fixture.keygen({'a', 'b', 'c', 'd', 'e'})

    def root_value(self):
        decryptor = self.fixture.decrypt(self.sk, self.ctbs)
        root_id = self.encryptor.tree.root.node_id
        return decryptor.state.node_values[root_id]

    def test_chain_opens_blocks_without_leaves(self):
        stripped = [self.ctbs[0]] + [
            dataclasses.replace(ctb, leaf_components={}, delta_components={})
            for ctb in self.ctbs[1:]
        ]
        state = DecryptionState()
        for ctb in stripped:
            state.add(ctb)
        block, sec_next = decrypt_block(stripped[0], self.sk,
                                        RootUnlock(self.root_value()))
        state.record(block, sec_next)
        self.assertEqual(assemble_message(state, self.sk), MESSAGE)
        self.assertEqual(len(state.data_blocks), len(self.ctbs))

    def test_missing_first_block(self):
        state = DecryptionState()
        for ctb in self.ctbs:
            state.add(ctb)
        second = self.ctbs[1]
        sec = self.fixture.suite.exp(
            self.fixture.suite.g,
            self.encryptor.state.secrets[2] / self.fixture.q)
        block, sec_next = decrypt_block(second, self.sk, SecUnlock(sec))
        state.record(block, sec_next)
        self.assertIsNone(assemble_message(state, self.sk))

    def test_unlock_kinds_agree(self):
        decryptor = self.fixture.decrypt(self.sk, self.ctbs)
        second = self.ctbs[1]
        gate_id = next(iter(second.delta_components))
        by_gate = decrypt_block(second, self.sk, GateUnlock(
            gate_id, decryptor.state.node_values[gate_id]))
        by_sec = decrypt_block(second, self.sk,
                               SecUnlock(decryptor.state.secs[2]))
        self.assertEqual(by_gate, by_sec)

    def test_root_unlock_only_for_first_block(self):
        with self.assertRaises(ArgumentError):
            decrypt_block(self.ctbs[1], self.sk,
                          RootUnlock(self.root_value()))
