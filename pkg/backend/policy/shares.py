from algebra.scalars import Scalar
from core.exceptions import ArgumentError


def lagrange_coeff(i, indices, x, modulus):
    """Delta_{i,S}(x) = prod_{j in S, j != i} (x - j) / (i - j) mod p."""
    indices = {int(j) for j in indices}
    i = int(i)
    if i not in indices:
        raise ArgumentError(f'index {i} is not in the interpolation set')
    if any(j % modulus == 0 for j in indices):
        raise ArgumentError('interpolation indices must be nonzero mod p')
    x = Scalar(int(x), modulus)
    result = Scalar(1, modulus)
    for j in indices:
        if j != i:
            result = result * (x - j) / (i - j)
    return result


class Polynomial:
    """Share polynomial q_x over Z_p, coefficients from degree 0 up."""

    def __init__(self, coefficients):
        if not coefficients:
            raise ArgumentError('a polynomial needs at least one coefficient')
        self.coefficients = tuple(coefficients)

    @classmethod
    def random(cls, constant, degree, rng, modulus):
        constant = Scalar(int(constant), modulus)
        return cls([constant] + [
            Scalar(rng.randrange(modulus), modulus) for _ in range(degree)
        ])

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, x):
        result = self.coefficients[-1]
        for coefficient in reversed(self.coefficients[:-1]):
            result = result * x + coefficient
        return result
