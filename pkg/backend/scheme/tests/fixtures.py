"""Deterministic scheme fixtures that keep the secret exponents."""
import random

from algebra.groups import get_suite
from policy.grammar import parse_policy
from scheme.decryption import MessageDecryptor
from scheme.encryption import MessageEncryptor
from scheme.keys import EncryptionContext, keygen, setup


class RecordingRandom(random.Random):
    """random.Random that remembers every randrange draw."""

    def __init__(self, seed=None):
        self.draws = []
        super().__init__(seed)

    def randrange(self, *args, **kwargs):
        value = super().randrange(*args, **kwargs)
        self.draws.append(value)
        return value


class SchemeFixture:
    """Setup with alpha, beta, q, k retained for closed-form checks."""

    def __init__(self, seed=1):
        self.suite = get_suite()
        self.rng = RecordingRandom(seed)
        self.pk, self.mk = setup(self.rng)
        self.alpha, self.beta, self.q, self.k = (
            self.suite.scalar(value) for value in self.rng.draws[:4])
        self.context = EncryptionContext.from_master(self.pk, self.mk)

    def keygen(self, attrs):
        """Returns the key and its r."""
        start = len(self.rng.draws)
        sk = keygen(self.pk, self.mk, attrs, self.rng)
        return sk, self.suite.scalar(self.rng.draws[start])

    def encryptor(self, policy, message, message_id=None):
        tree = parse_policy(policy) if isinstance(policy, str) else policy
        return MessageEncryptor(self.context, tree, message, self.rng,
                                message_id=message_id)

    def encrypt(self, policy, message, message_id=None):
        encryptor = self.encryptor(policy, message, message_id)
        return encryptor, list(encryptor)

    @staticmethod
    def decrypt(sk, ctbs):
        decryptor = MessageDecryptor(sk)
        for ctb in ctbs:
            decryptor.receive(ctb)
        return decryptor

    def egg_power(self, exponent):
        return self.suite.exp(self.suite.egg, exponent)
