import random

from django.test import SimpleTestCase

from algebra.groups import GroupSuite, get_suite
from algebra.scalars import Scalar
from core.exceptions import ArgumentError, DecodeError
from core.utils import xor_bytes


class PairingTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.suite = get_suite()
        cls.rng = random.Random(1)

    def test_bilinearity_small_exponents(self):
        suite = self.suite
        g = suite.g
        left = suite.pair(suite.exp(g, 2), suite.exp(g, 3))
        self.assertEqual(left, suite.exp(suite.pair(g, g), 6))

    def test_bilinearity_random(self):
        suite = self.suite
        for _ in range(100):
            u = suite.exp(suite.g, suite.random_scalar(self.rng))
            v = suite.exp(suite.g, suite.random_scalar(self.rng))
            a = suite.random_scalar(self.rng)
            b = suite.random_scalar(self.rng)
            self.assertEqual(
                suite.pair(suite.exp(u, a), suite.exp(v, b)),
                suite.exp(suite.pair(u, v), a * b),
            )

    def test_symmetric(self):
        suite = self.suite
        a = suite.random_scalar(self.rng)
        b = suite.random_scalar(self.rng)
        ga, gb = suite.exp(suite.g, a), suite.exp(suite.g, b)
        self.assertEqual(suite.pair(ga, gb), suite.pair(gb, ga))

    def test_identity_pairs_to_identity(self):
        suite = self.suite
        self.assertEqual(suite.pair(suite.g, suite.g0_identity),
                         suite.gt_identity)
        self.assertEqual(suite.pair(suite.g0_identity, suite.g),
                         suite.gt_identity)

    def test_non_degenerate(self):
        self.assertNotEqual(self.suite.pair(self.suite.g, self.suite.g),
                            self.suite.gt_identity)

    def test_exponent_arithmetic_matches_group(self):
        suite = self.suite
        a = suite.random_scalar(self.rng)
        b = suite.random_scalar(self.rng)
        self.assertEqual(suite.exp(suite.g, a + b),
                         suite.exp(suite.g, a) * suite.exp(suite.g, b))


class HashToGroupTests(SimpleTestCase):

    def setUp(self):
        self.suite = get_suite()

    def test_deterministic(self):
        self.assertEqual(self.suite.hash_to_g0('Hv', b'message'),
                         self.suite.hash_to_g0('Hv', b'message'))

    def test_domain_separation(self):
        self.assertNotEqual(self.suite.hash_to_g0('Hv', b'temperature'),
                            self.suite.hash_to_g0('Hatt', b'temperature'))

    def test_exponent_law(self):
        element = self.suite.hash_to_g0('Hatt', 'temperature')
        self.assertEqual(self.suite.exp(element, 2), element * element)

    def test_unknown_domain(self):
        with self.assertRaises(ArgumentError):
            self.suite.hash_to_g0('H', b'x')


class KdfMaskTests(SimpleTestCase):

    def setUp(self):
        self.suite = get_suite()
        self.rng = random.Random(7)

    def random_gt(self):
        return self.suite.exp(self.suite.egg, self.suite.random_scalar(self.rng))

    def test_deterministic(self):
        key = self.random_gt()
        self.assertEqual(self.suite.kdf_mask(key, 100),
                         self.suite.kdf_mask(key, 100))

    def test_xor_involution(self):
        key = self.random_gt()
        payload = bytes(range(256)) * 3
        mask = self.suite.kdf_mask(key, len(payload))
        self.assertEqual(xor_bytes(xor_bytes(payload, mask), mask), payload)

    def test_distinct_keys_distinct_streams(self):
        prefixes = {self.suite.kdf_mask(self.random_gt(), 32)
                    for _ in range(100)}
        self.assertEqual(len(prefixes), 100)

    def test_zero_length_rejected(self):
        with self.assertRaises(ArgumentError):
            self.suite.kdf_mask(self.suite.egg, 0)


class SerializationTests(SimpleTestCase):

    def setUp(self):
        self.suite = get_suite()
        self.rng = random.Random(3)

    def test_round_trips(self):
        suite = self.suite
        for _ in range(20):
            x = suite.random_scalar(self.rng)
            u = suite.exp(suite.g, x)
            t = suite.exp(suite.egg, x)
            self.assertEqual(suite.decode_scalar(suite.encode_scalar(x)), x)
            self.assertEqual(suite.decode_g0(suite.encode_g0(u)), u)
            self.assertEqual(suite.decode_gt(suite.encode_gt(t)), t)

    def test_fixed_lengths(self):
        suite = self.suite
        x = suite.random_scalar(self.rng)
        self.assertEqual(len(suite.encode_g0(suite.exp(suite.g, x))),
                         suite.g0_length)
        self.assertEqual(len(suite.encode_gt(suite.exp(suite.egg, x))),
                         suite.gt_length)
        self.assertEqual(len(suite.encode_scalar(x)), suite.scalar_length)

    def test_truncated_rejected(self):
        suite = self.suite
        with self.assertRaises(DecodeError):
            suite.decode_g0(suite.encode_g0(suite.g)[:-1])
        with self.assertRaises(DecodeError):
            suite.decode_gt(suite.encode_gt(suite.egg)[:-1])
        with self.assertRaises(DecodeError):
            suite.decode_scalar(b'\x01')

    def test_unreduced_scalar_rejected(self):
        suite = self.suite
        data = suite.order.to_bytes(suite.scalar_length, 'big')
        with self.assertRaises(DecodeError):
            suite.decode_scalar(data)

    def test_generator_encoding_stable(self):
        fresh = GroupSuite(self.suite.suite_id)
        self.assertEqual(fresh.encode_g0(fresh.g),
                         self.suite.encode_g0(self.suite.g))


class ScalarTests(SimpleTestCase):

    def setUp(self):
        self.p = get_suite().order
        self.rng = random.Random(11)

    def test_field_laws(self):
        for _ in range(50):
            a = Scalar(self.rng.randrange(1, self.p), self.p)
            b = Scalar(self.rng.randrange(self.p), self.p)
            self.assertEqual((a * b) * a.inverse(), b)
            self.assertEqual((a * b) / a, b)
            self.assertEqual(a - a, 0)

    def test_zero_has_no_inverse(self):
        with self.assertRaises(ArgumentError):
            Scalar(0, self.p).inverse()

    def test_reduced_on_construction(self):
        self.assertEqual(Scalar(self.p + 5, self.p).value, 5)
        self.assertEqual(Scalar(-1, self.p).value, self.p - 1)
