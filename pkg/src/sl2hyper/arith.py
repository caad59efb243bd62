"""Scalars in F_p and integer-top binomial coefficients reduced mod p."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb


class ModulusError(RuntimeError):
    """Raised when values over different primes are combined."""


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not a prime")
    return p


@dataclass(frozen=True)
class FpScalar:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ModulusError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def inverse(self) -> FpScalar:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FpScalar(v, self.p).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FpScalar(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ModulusError(f"mixed moduli {self.p} and {other.p}")
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


@lru_cache(maxsize=None)
def binom_int(top: int, bottom: int) -> int:
    """Exact binomial coefficient with an arbitrary integer top.

    Uses binom(-a-1, k) = (-1)^k binom(a+k, k) for negative tops.
    """
    if bottom < 0:
        return 0
    if top >= 0:
        return comb(top, bottom)
    a = -top - 1
    sign = -1 if bottom % 2 else 1
    return sign * comb(a + bottom, bottom)


def binom_mod(top: int, bottom: int, p: int) -> int:
    """binom(top, bottom) mod p as a plain int in [0, p)."""
    if 0 <= bottom and 0 <= top and top >= p:
        return lucas(top, bottom, p)
    return binom_int(top, bottom) % p


def binom_mod_p(top: int, bottom: int, p: int) -> FpScalar:
    if bottom < 0:
        raise ValueError("bottom must be non-negative")
    return FpScalar(binom_int(top, bottom), p)


def lucas(top: int, bottom: int, p: int) -> int:
    result = 1
    while top or bottom:
        t, b = top % p, bottom % p
        if b > t:
            return 0
        result = result * comb(t, b) % p
        top //= p
        bottom //= p
    return result


def lucas_check(top: int, bottom: int, p: int) -> FpScalar:
    """Product of digit binomials (Lucas); agrees with binom_mod_p for top >= 0."""
    if top < 0 or bottom < 0:
        raise ValueError("lucas_check needs non-negative arguments")
    return FpScalar(lucas(top, bottom, p), p)


def factorial_mod(n: int, p: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out = out * k % p
    return out


def inv_mod(x: int, p: int) -> int:
    return pow(x % p, -1, p)
