"""The divided-power form of U(sl2) reduced mod p, in the PBW basis.

A basis monomial ``(m, n, m')`` stands for ``Y^(m) * binom(H, n) * X^(m')``.
Products are straightened with the Kostant relations

* ``X^(a) X^(b) = binom(a+b, a) X^(a+b)`` (same for Y),
* ``f(H) Y^(b) = Y^(b) f(H - 2b)`` and ``X^(a) f(H) = f(H - 2a) X^(a)``,
* ``X^(a) Y^(b) = sum_j Y^(b-j) binom(H - a - b + 2j, j) X^(a-j)``,

and polynomials in H are multiplied by sampling at ``t = 0..N`` and
inverting the unitriangular matrix ``binom(t, i)``.  The module also holds
the action on ``F_p[x, y]`` used as an independent multiplication oracle.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .arith import FpScalar, ModulusError, binom_int, binom_mod, factorial_mod
from .linalg import RowSolver


class ClosureError(AssertionError):
    """A product of elements of U_r produced a nonzero term outside U_r."""


class NotInSpan(ValueError):
    pass


class DependentTargets(ValueError):
    pass


class PBWMonomial(NamedTuple):
    m: int
    n: int
    m_prime: int

    @property
    def degree(self) -> int:
        return self.m_prime - self.m


UNIT = PBWMonomial(0, 0, 0)


class _BinomTable:
    """binom(t, n) mod p for a window of integer tops t, grown on demand."""

    def __init__(self, p: int):
        self.p = p
        # (lo, hi, nmax, table) replaced as a whole so readers never see a torn state
        self.state = (0, -1, -1, np.zeros((0, 0), dtype=np.int64))
        self.diff = np.ones((1, 1), dtype=np.int64)
        self._lock = threading.Lock()

    def _grow(self, lo: int, hi: int, nmax: int) -> None:
        with self._lock:
            old_lo, old_hi, old_nmax, _ = self.state
            lo = min(lo, old_lo) - 16
            hi = max(hi, old_hi) + 16
            nmax = max(nmax, old_nmax) + 16
            p = self.p
            table = np.zeros((hi - lo + 1, nmax + 1), dtype=np.int64)
            table[0] = [binom_int(lo, n) % p for n in range(nmax + 1)]
            for i in range(1, hi - lo + 1):
                row = table[i - 1].copy()
                row[1:] += table[i - 1, :-1]
                table[i] = row % p
            self.state = (lo, hi, nmax, table)

    def rows(self, tops: np.ndarray, nmax: int) -> np.ndarray:
        lo, hi = int(tops.min()), int(tops.max())
        state = self.state
        if lo < state[0] or hi > state[1] or nmax > state[2]:
            self._grow(lo, hi, nmax)
            state = self.state
        return state[3][tops - state[0]]

    def inverse_differences(self, size: int) -> np.ndarray:
        """Matrix with entries (-1)^(i-k) binom(i, k); maps values at 0..size-1 to binomial-basis coefficients."""
        if self.diff.shape[0] < size:
            with self._lock:
                n = max(size, 2 * self.diff.shape[0])
                d = np.zeros((n, n), dtype=np.int64)
                for i in range(n):
                    for k in range(i + 1):
                        d[i, k] = (-1) ** (i - k) * binom_int(i, k) % self.p
                self.diff = d
        return self.diff[:size, :size]


@lru_cache(maxsize=None)
def _table(p: int) -> _BinomTable:
    return _BinomTable(p)


class AlgebraElement:
    """Finitely supported element of U over F_p; immutable."""

    __slots__ = ("p", "_terms", "_hash")

    def __init__(self, p: int, terms: Mapping | Iterable = ()):
        self.p = p
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[PBWMonomial, int] = {}
        for mono, c in items:
            c = int(c) % p
            if c:
                clean[PBWMonomial(*mono)] = c
        self._terms = clean
        self._hash = None

    # constructors
    @classmethod
    def monomial(cls, p: int, m: int = 0, n: int = 0, m_prime: int = 0, coeff: int = 1) -> AlgebraElement:
        return cls(p, {PBWMonomial(m, n, m_prime): coeff})

    @classmethod
    def one(cls, p: int) -> AlgebraElement:
        return cls(p, {UNIT: 1})

    @classmethod
    def zero(cls, p: int) -> AlgebraElement:
        return cls(p)

    @classmethod
    def scalar(cls, c, p: int) -> AlgebraElement:
        return cls(p, {UNIT: int(c)})

    @property
    def terms(self) -> Mapping[PBWMonomial, int]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[PBWMonomial, int]]:
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, mono) -> FpScalar:
        return FpScalar(self._terms.get(PBWMonomial(*mono), 0), self.p)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic
    def _check(self, other: AlgebraElement) -> None:
        if other.p != self.p:
            raise ModulusError(f"mixed moduli {self.p} and {other.p}")

    def _scalar_of(self, c) -> int | None:
        if isinstance(c, FpScalar):
            if c.p != self.p:
                raise ModulusError(f"mixed moduli {self.p} and {c.p}")
            return c.value
        if isinstance(c, (int, np.integer)):
            return int(c)
        return None

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            c = self._scalar_of(other)
            if c is None:
                return NotImplemented
            other = AlgebraElement.scalar(c, self.p)
        self._check(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, 0) + c
        return AlgebraElement(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.p, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            c = self._scalar_of(other)
            if c is None:
                return NotImplemented
            other = AlgebraElement.scalar(c, self.p)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> AlgebraElement:
        c = self._scalar_of(c)
        return AlgebraElement(self.p, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = self._scalar_of(other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        c = self._scalar_of(other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = AlgebraElement.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.p == other.p and self._terms == other._terms
        if isinstance(other, (int, FpScalar)):
            return self == AlgebraElement.scalar(int(other), self.p)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self._terms.items())))
        return self._hash

    # membership
    @property
    def level(self) -> int:
        """Smallest r with every index below p^r (0 for scalars)."""
        top = max((max(mono) for mono in self._terms), default=0)
        r, bound = 0, 1
        while top >= bound:
            r += 1
            bound *= self.p
        return r

    def in_u(self, r: int) -> bool:
        return self.level <= r

    def in_u0(self, r: int) -> bool:
        return self.in_u(r) and all(mono.m == 0 and mono.m_prime == 0 for mono in self._terms)

    def in_a(self, r: int | None = None) -> bool:
        if any(mono.m != mono.m_prime for mono in self._terms):
            return False
        return r is None or self.in_u(r)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"AlgebraElement(p={self.p}, {to_text(self)!r})"


def X(m: int, p: int) -> AlgebraElement:
    return AlgebraElement.monomial(p, 0, 0, m)


def Y(m: int, p: int) -> AlgebraElement:
    return AlgebraElement.monomial(p, m, 0, 0)


def H(n: int, p: int) -> AlgebraElement:
    """binom(H, n)."""
    return AlgebraElement.monomial(p, 0, n, 0)


def to_text(e: AlgebraElement) -> str:
    """Canonical text form: ``c*Y(m)*H(n)*X(m')`` terms joined by `` + ``."""
    if not e._terms:
        return "0"
    parts = []
    for (m, n, mp), c in e.items():
        factors = [f"{name}({k})" for name, k in (("Y", m), ("H", n), ("X", mp)) if k]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


def _groups(e: AlgebraElement) -> dict[tuple[int, int], tuple[np.ndarray, np.ndarray]]:
    grouped: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for (m, n, mp), c in e._terms.items():
        grouped[(m, mp)].append((n, c))
    return {
        key: (np.array([n for n, _ in v], dtype=np.int64), np.array([c for _, c in v], dtype=np.int64))
        for key, v in grouped.items()
    }


def multiply(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    if e1.p != e2.p:
        raise ModulusError(f"mixed moduli {e1.p} and {e2.p}")
    p = e1.p
    if not e1._terms or not e2._terms:
        return AlgebraElement(p)
    tab = _table(p)
    bound = p ** max(e1.level, e2.level)
    acc: dict[tuple[int, int, int], int] = defaultdict(int)
    g2 = _groups(e2)
    for (m1, k1), (ns1, cs1) in _groups(e1).items():
        top1 = int(ns1.max())
        for (m2, k2), (ns2, cs2) in g2.items():
            top2 = int(ns2.max())
            for j in range(min(k1, m2) + 1):
                b, a = m2 - j, k1 - j
                scale = binom_mod(m1 + b, b, p) * binom_mod(a + k2, a, p) % p
                if not scale:
                    continue
                size = top1 + j + top2 + 1
                t = np.arange(size, dtype=np.int64)
                f = tab.rows(t - 2 * b, top1)[:, ns1] @ cs1 % p
                f = f * tab.rows(t - k1 - m2 + 2 * j, j)[:, j] % p
                f = f * (tab.rows(t - 2 * a, top2)[:, ns2] @ cs2 % p) % p
                coeffs = tab.inverse_differences(size) @ f % p
                for i in np.flatnonzero(coeffs):
                    acc[(m1 + b, int(i), a + k2)] += scale * int(coeffs[i])
    out = AlgebraElement(p, acc)
    for mono in out._terms:
        if max(mono) >= bound:
            raise ClosureError(f"term {mono} escapes U_r with p^r = {bound}")
    return out


def degree_components(e: AlgebraElement) -> dict[int, AlgebraElement]:
    parts: dict[int, dict] = defaultdict(dict)
    for mono, c in e._terms.items():
        parts[mono.degree][mono] = c
    return {d: AlgebraElement(e.p, t) for d, t in sorted(parts.items())}


def fr(e: AlgebraElement) -> AlgebraElement:
    """Frobenius: divides all three indices by p, killing terms where p does not divide them."""
    p = e.p
    return AlgebraElement(
        p,
        {(m // p, n // p, mp // p): c for (m, n, mp), c in e._terms.items() if m % p == 0 and n % p == 0 and mp % p == 0},
    )


def fr_prime(e: AlgebraElement) -> AlgebraElement:
    p = e.p
    return AlgebraElement(p, {(m * p, n * p, mp * p): c for (m, n, mp), c in e._terms.items()})


def power_x(s: int, p: int) -> AlgebraElement:
    """Ordinary power X^s = s! X^(s)."""
    return AlgebraElement.monomial(p, 0, 0, s, factorial_mod(s, p))


def power_y(s: int, p: int) -> AlgebraElement:
    return AlgebraElement.monomial(p, s, 0, 0, factorial_mod(s, p))


def basis_u(p: int, r: int) -> list[PBWMonomial]:
    q = p**r
    return [PBWMonomial(m, n, mp) for m in range(q) for n in range(q) for mp in range(q)]


def basis_a(p: int, r: int) -> list[PBWMonomial]:
    q = p**r
    return [PBWMonomial(m, n, m) for m in range(q) for n in range(q)]


# ---------------------------------------------------------------- oracle

@dataclass(frozen=True)
class OperatorMatrix:
    """Action of an element on a direct sum of modules S^d1 V (x) S^d2 V.

    The block for bidegree (d1, d2) acts on the monomials
    x1^a1 y1^(d1-a1) x2^a2 y2^(d2-a2), indexed by a1 * (d2 + 1) + a2.
    Bidegree (d, 0) is the symmetric power S^d V on x^a y^(d-a).
    """

    p: int
    degree_bound: int
    bidegrees: tuple
    blocks: tuple

    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix:
        if other.p != self.p:
            raise ModulusError(f"mixed moduli {self.p} and {other.p}")
        if other.bidegrees != self.bidegrees:
            raise ValueError("operator matrices act on different modules")
        blocks = tuple(a @ b % self.p for a, b in zip(self.blocks, other.blocks))
        return OperatorMatrix(self.p, self.degree_bound, self.bidegrees, blocks)

    def block(self, d1: int, d2: int = 0) -> np.ndarray:
        return self.blocks[self.bidegrees.index((d1, d2))]

    def flat(self) -> np.ndarray:
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (
            self.p == other.p
            and self.bidegrees == other.bidegrees
            and all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks))
        )

    __hash__ = None


@lru_cache(maxsize=None)
def _raise_x(m: int, d: int, p: int) -> np.ndarray:
    # X^(m): x^a y^b -> binom(b, m) x^(a+m) y^(b-m)
    mat = np.zeros((d + 1, d + 1), dtype=np.int64)
    for a in range(d + 1 - m):
        mat[a + m, a] = binom_int(d - a, m) % p
    return mat


@lru_cache(maxsize=None)
def _lower_y(m: int, d: int, p: int) -> np.ndarray:
    # Y^(m): x^a y^b -> binom(a, m) x^(a-m) y^(b+m)
    mat = np.zeros((d + 1, d + 1), dtype=np.int64)
    for a in range(m, d + 1):
        mat[a - m, a] = binom_int(a, m) % p
    return mat


@lru_cache(maxsize=None)
def _tensor_power(which: str, m: int, d1: int, d2: int, p: int) -> np.ndarray:
    single = _raise_x if which == "x" else _lower_y
    total = np.zeros(((d1 + 1) * (d2 + 1),) * 2, dtype=np.int64)
    for i in range(m + 1):
        total += np.kron(single(i, d1, p), single(m - i, d2, p))
    return total % p


@lru_cache(maxsize=None)
def _weights(d1: int, d2: int) -> np.ndarray:
    a1, a2 = np.meshgrid(np.arange(d1 + 1), np.arange(d2 + 1), indexing="ij")
    return ((2 * a1 - d1) + (2 * a2 - d2)).reshape(-1)


@lru_cache(maxsize=65536)
def _monomial_block(mono: PBWMonomial, p: int, d1: int, d2: int) -> np.ndarray:
    m, n, mp = mono
    h = np.array([binom_int(int(w), n) % p for w in _weights(d1, d2)], dtype=np.int64)
    x = _tensor_power("x", mp, d1, d2, p)
    y = _tensor_power("y", m, d1, d2, p)
    return y @ (h[:, None] * x) % p


def oracle_bidegrees(p: int, D: int, r: int | None = None) -> tuple:
    """S^d for d <= D, plus St_r (x) S^d for d < p^r when r is given.

    The symmetric powers alone are never faithful on U_r; the Steinberg
    tensor products make the sum faithful.
    """
    out = [(d, 0) for d in range(D + 1)]
    if r is not None:
        q = p**r
        out += [(q - 1, d) for d in range(1, q)]
    return tuple(dict.fromkeys(out))


def operator_matrix(e: AlgebraElement, D: int, r: int | None = None) -> OperatorMatrix:
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    p = e.p
    bidegrees = oracle_bidegrees(p, D, r)
    blocks = []
    for d1, d2 in bidegrees:
        size = (d1 + 1) * (d2 + 1)
        acc = np.zeros((size, size), dtype=np.int64)
        for mono, c in e._terms.items():
            acc += c * _monomial_block(mono, p, d1, d2)
        blocks.append(acc % p)
    return OperatorMatrix(p, D, bidegrees, tuple(blocks))


# ---------------------------------------------------------------- span solving

def coordinates(elements: list[AlgebraElement], index: dict[PBWMonomial, int]) -> np.ndarray:
    mat = np.zeros((len(elements), len(index)), dtype=np.int64)
    for row, e in enumerate(elements):
        for mono, c in e._terms.items():
            mat[row, index[mono]] = c
    return mat


class SpanSolver:
    """Repeated coefficient extraction against fixed independent targets."""

    def __init__(self, targets: list[AlgebraElement], p: int | None = None):
        if not targets and p is None:
            raise ValueError("need p when there are no targets")
        self.p = p if p is not None else targets[0].p
        for t in targets:
            if t.p != self.p:
                raise ModulusError(f"mixed moduli {self.p} and {t.p}")
        support = sorted({mono for t in targets for mono in t._terms})
        self.index = {mono: i for i, mono in enumerate(support)}
        self.size = len(targets)
        if targets:
            try:
                self._solver = RowSolver(coordinates(targets, self.index), self.p)
            except ValueError:
                raise DependentTargets("targets are linearly dependent") from None

    def solve(self, e: AlgebraElement) -> np.ndarray:
        if e.p != self.p:
            raise ModulusError(f"mixed moduli {self.p} and {e.p}")
        if any(mono not in self.index for mono in e._terms):
            raise NotInSpan("element has support outside the targets")
        if self.size == 0:
            return np.zeros(0, dtype=np.int64)
        x = self._solver.solve(coordinates([e], self.index)[0])
        if x is None:
            raise NotInSpan("element is not in the span of the targets")
        return x


def solve_in_span(targets: list[AlgebraElement], e: AlgebraElement) -> list[int]:
    """Unique coefficients c with sum c_i * targets[i] == e.

    Raises DependentTargets or NotInSpan.
    """
    return [int(c) for c in SpanSolver(targets, e.p).solve(e)]
