"""Exact coefficient arithmetic: integers, rationals and prime fields."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class RingError(ValueError):
    """Raised for malformed coefficients or unsupported ring requests."""


class IntegerRing:
    """Arbitrary-precision integers."""

    name = "Z"
    is_field = False
    is_domain = True
    zero = 0
    one = 1

    def coerce(self, value):
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise RingError(f"{value} is not an integer")
            return int(value)
        raise RingError(f"cannot interpret {value!r} as an integer")

    def from_fraction(self, numerator, denominator):
        if denominator == 0:
            raise RingError("zero denominator")
        if numerator % denominator:
            raise RingError(f"{numerator}/{denominator} is not an integer")
        return numerator // denominator

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def split_sign(self, a):
        """Return (is_negative, magnitude) for sign-aware printing."""
        return (a < 0, -a) if a < 0 else (False, a)

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "ZZ"


class RationalRing:
    """Arbitrary-precision rationals in lowest terms."""

    name = "Q"
    is_field = True
    is_domain = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise RingError(f"cannot interpret {value!r} as a rational")

    def from_fraction(self, numerator, denominator):
        if denominator == 0:
            raise RingError("zero denominator")
        return Fraction(numerator, denominator)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def split_sign(self, a):
        return (a < 0, -a) if a < 0 else (False, a)

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Integers modulo a prime, stored as least non-negative residues."""

    is_field = True
    is_domain = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise RingError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.from_fraction(value.numerator, value.denominator)
        raise RingError(f"cannot interpret {value!r} mod {self.p}")

    def from_fraction(self, numerator, denominator):
        if denominator % self.p == 0:
            raise RingError(f"denominator {denominator} vanishes mod {self.p}")
        return numerator * pow(denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def split_sign(self, a):
        # residues carry no sign
        return (False, a)

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


ZZ = IntegerRing()
QQ = RationalRing()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def ring_from_name(spec: str):
    """Resolve a ring spec string: ``Z``, ``Q`` or ``Fp:<prime>``."""
    if spec == "Z":
        return ZZ
    if spec == "Q":
        return QQ
    if spec.startswith("Fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise RingError(f"bad prime in ring spec {spec!r}") from None
        return GF(p)
    raise RingError(f"unknown ring {spec!r} (expected Z, Q or Fp:<prime>)")
