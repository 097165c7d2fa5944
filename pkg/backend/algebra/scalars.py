from core.exceptions import ArgumentError, DecodeError


class Scalar:
    """Element of Z_p, the exponent field of the pairing groups."""

    __slots__ = ('value', 'modulus')

    def __init__(self, value, modulus):
        self.value = int(value) % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.modulus != self.modulus:
                raise ArgumentError('scalars from different fields')
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return Scalar(self.value + value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return Scalar(self.value - value, self.modulus)

    def __rsub__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return Scalar(value - self.value, self.modulus)

    def __mul__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return Scalar(self.value * value, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return self * Scalar(value, self.modulus).inverse()

    def __rtruediv__(self, other):
        value = self._coerce(other)
        if value is NotImplemented:
            return value
        return Scalar(value, self.modulus) * self.inverse()

    def __neg__(self):
        return Scalar(-self.value, self.modulus)

    def __pow__(self, exponent):
        return Scalar(pow(self.value, int(exponent), self.modulus),
                      self.modulus)

    def inverse(self):
        if self.value == 0:
            raise ArgumentError('zero has no inverse')
        return Scalar(pow(self.value, -1, self.modulus), self.modulus)

    def is_zero(self):
        return self.value == 0

    def __int__(self):
        return self.value

    __index__ = __int__

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (self.value, self.modulus) == (other.value, other.modulus)
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f'Scalar({self.value})'

    def byte_length(self):
        return byte_length(self.modulus)

    def to_bytes(self):
        return self.value.to_bytes(self.byte_length(), 'big')

    @classmethod
    def from_bytes(cls, data, modulus):
        expected = byte_length(modulus)
        if len(data) != expected:
            raise DecodeError(
                f'scalar encoding must be {expected} bytes, got {len(data)}'
            )
        value = int.from_bytes(data, 'big')
        if value >= modulus:
            raise DecodeError('scalar encoding is not reduced')
        return cls(value, modulus)


def byte_length(modulus):
    return (modulus.bit_length() + 7) // 8
