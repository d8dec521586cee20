"""Exact coefficient fields: arbitrary-precision rationals and odd prime fields.

Coefficients are stored "raw" (python ints for prime fields, Fraction for
the rationals); a FieldDesc bundles the arithmetic so polynomial code stays
field-agnostic.  Prime moduli are restricted to [2**15, 2**31) so products
fit comfortably in 64-bit machine arithmetic in the compiled kernel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

PRIME_LO = 1 << 15
PRIME_HI = 1 << 31


class FieldDesc:
    """A coefficient field: the rationals (characteristic 0) or GF(p)."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic:
            if not (PRIME_LO <= characteristic < PRIME_HI):
                raise ValueError("prime characteristic must lie in [2^15, 2^31)")
            if not gmpy2.is_prime(characteristic):
                raise ValueError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    @property
    def kind(self) -> str:
        return "PrimeField" if self.characteristic else "Rationals"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    # -- raw coefficient arithmetic ------------------------------------
    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def of_int(self, n):
        p = self.characteristic
        return n % p if p else Fraction(n)

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        p = self.characteristic
        if p:
            if a % p == 0:
                raise ZeroDivisionError("inverse of 0 in prime field")
            return pow(a, p - 2, p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def random(self, rng: random.Random, window: int = 100):
        """A random integer element in [-window, window], reduced into
        the field."""
        return self.of_int(rng.randint(-window, window))

    def coeff_str(self, a) -> str:
        if self.characteristic:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def coeff_from_str(self, s: str):
        if self.characteristic:
            return int(s) % self.characteristic
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, FieldDesc) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("FieldDesc", self.characteristic))

    def __repr__(self):
        return "QQ" if not self.characteristic else f"GF({self.characteristic})"


QQ = FieldDesc(0)


def GF(p: int) -> FieldDesc:
    return FieldDesc(p)


def random_prime(rng: random.Random) -> int:
    """A uniform-ish random prime in [2^15, 2^31)."""
    while True:
        n = rng.randrange(PRIME_LO | 1, PRIME_HI, 2)
        if gmpy2.is_prime(n):
            return n


def random_distinct_primes(rng: random.Random, count: int) -> list[int]:
    out: list[int] = []
    while len(out) < count:
        p = random_prime(rng)
        if p not in out:
            out.append(p)
    return out


@dataclass(frozen=True)
class Scalar:
    """An exact scalar tagged with its field (wire/serialization form)."""

    field: FieldDesc
    value: object

    def __post_init__(self):
        if self.field.is_prime_field:
            object.__setattr__(self, "value", self.value % self.field.characteristic)
        else:
            object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self):
        return self.field.coeff_str(self.value)
