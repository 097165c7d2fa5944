from django.test import SimpleTestCase

from scheme.tests.fixtures import SchemeFixture
from scheme.verification import (VerificationTuple, data_verification,
                                 make_challenge, verify_message)

MESSAGE = b'integrity checked payload'


class DataVerificationTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=51)

    def test_deterministic(self):
        self.assertEqual(data_verification(MESSAGE, self.fixture.mk),
                         data_verification(MESSAGE, self.fixture.mk))

    def test_definition(self):
        suite = self.fixture.suite
        self.assertEqual(
            data_verification(MESSAGE, self.fixture.mk),
            suite.exp(suite.hash_to_g0('Hv', MESSAGE), self.fixture.k))

    def test_context_and_master_key_agree(self):
        self.assertEqual(data_verification(MESSAGE, self.fixture.context),
                         data_verification(MESSAGE, self.fixture.mk))

    def test_distinct_messages(self):
        self.assertNotEqual(data_verification(MESSAGE, self.fixture.mk),
                            data_verification(MESSAGE + b'!',
                                              self.fixture.mk))


class ChallengeTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.fixture = SchemeFixture(seed=52)
        cls.commitment = data_verification(MESSAGE, cls.fixture.mk)

    def challenge(self):
        start = len(self.fixture.rng.draws)
        challenge = make_challenge(self.commitment, self.fixture.mk,
                                   self.fixture.rng)
        return challenge, self.fixture.suite.scalar(
            self.fixture.rng.draws[start])

    def test_challenge_components(self):
        suite = self.fixture.suite
        challenge, t = self.challenge()
        self.assertEqual(challenge.V2, suite.exp(suite.g, t))
        self.assertEqual(challenge.V1,
                         suite.exp(suite.hash_to_g0('Hv', MESSAGE), t))

    def test_fresh_challenges(self):
        first, _ = self.challenge()
        second, _ = self.challenge()
        self.assertNotEqual(first, second)

    def test_honest_message(self):
        challenge, _ = self.challenge()
        self.assertTrue(verify_message(MESSAGE, challenge))

    def test_flipped_bit(self):
        challenge, _ = self.challenge()
        tampered = bytes([MESSAGE[0] ^ 0x01]) + MESSAGE[1:]
        self.assertFalse(verify_message(tampered, challenge))

    def test_foreign_v2(self):
        suite = self.fixture.suite
        challenge, t = self.challenge()
        forged = VerificationTuple(V1=challenge.V1,
                                   V2=suite.exp(suite.g, t + 1))
        self.assertFalse(verify_message(MESSAGE, forged))
