"""Primitive idempotents of U_r and the elements B^(eps)(a, j) of A_r.

Index pairs (a, j) are stored with ``two_j = 2j`` so that the p = 2 label
j = 1/2 needs no rationals.  Pairs fall into four cases A-D; the case
decides the lifting map used to pass from level r-1 to level r.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .arith import binom_mod, check_prime, factorial_mod, inv_mod
from .hyperalgebra import (
    AlgebraElement,
    NotInSpan,
    SpanSolver,
    X,
    Y,
    fr_prime,
    power_x,
    power_y,
)

P2_PAIRS = ((0, 1), (1, 0), (1, 2))
P2_CASES = {(0, 1): "B", (1, 0): "C", (1, 2): "D"}


# ---------------------------------------------------------------- index pairs

def classify(a: int, two_j: int, p: int) -> str:
    """Which of the conditions A-D the pair (a, two_j / 2) satisfies."""
    if p == 2:
        if (a, two_j) not in P2_CASES:
            raise ValueError(f"({a}, {two_j}/2) is not an index pair for p=2")
        return P2_CASES[(a, two_j)]
    if not (0 <= a < p) or two_j % 2 or not (0 <= two_j <= p - 1):
        raise ValueError(f"({a}, {two_j}/2) is not an index pair for p={p}")
    j = two_j // 2
    if a % 2 == 0:
        return "A" if j >= (p - a + 1) // 2 else "B"
    return "C" if j <= (a - 1) // 2 else "D"


@dataclass(frozen=True, order=True)
class PairAJ:
    a: int
    two_j: int
    p: int

    def __post_init__(self):
        classify(self.a, self.two_j, self.p)

    @property
    def case(self) -> str:
        return classify(self.a, self.two_j, self.p)

    @property
    def active(self) -> bool:
        """True when B^(0) and B^(1) differ (j != 0 for p odd, a != 1 for p = 2)."""
        return self.a != 1 if self.p == 2 else self.two_j != 0

    @property
    def alpha(self) -> int:
        """j^2 - ((a+1)/2)^2 in F_p."""
        num = self.two_j**2 - (self.a + 1) ** 2
        if num % 4 == 0:
            return (num // 4) % self.p
        return num * inv_mod(4, self.p) % self.p

    @property
    def beta(self) -> int:
        """4 j^2 in F_p."""
        return self.two_j**2 % self.p

    @property
    def label(self) -> str:
        return f"{self.a}:{self.two_j}"

    def __str__(self):
        return self.label


def parse_pair(text: str, p: int) -> PairAJ:
    try:
        a, two_j = (int(x) for x in text.split(":"))
    except ValueError:
        raise ValueError(f"pair {text!r} is not of the form a:2j") from None
    return PairAJ(a, two_j, p)


def pairs(p: int) -> list[PairAJ]:
    """The index set P in lexicographic (a, two_j) order."""
    check_prime(p)
    if p == 2:
        return [PairAJ(a, tj, 2) for a, tj in P2_PAIRS]
    return [PairAJ(a, 2 * j, p) for a in range(p) for j in range((p + 1) // 2)]


@dataclass(frozen=True, order=True)
class TupleAJ:
    pairs: tuple

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("a tuple needs at least one pair")
        if len({pr.p for pr in self.pairs}) != 1:
            raise ValueError("pairs over different primes")

    @property
    def p(self) -> int:
        return self.pairs[0].p

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def active(self) -> tuple:
        return tuple(pr.active for pr in self.pairs)

    @property
    def w(self) -> int:
        return sum(self.active)

    @property
    def label(self) -> str:
        return ",".join(pr.label for pr in self.pairs)

    def tail(self) -> TupleAJ:
        return TupleAJ(self.pairs[1:])

    def __str__(self):
        return self.label


def parse_tuple(text: str, p: int) -> TupleAJ:
    return TupleAJ(tuple(parse_pair(part.strip(), p) for part in text.split(",")))


def tuples(p: int, r: int) -> list[TupleAJ]:
    return [TupleAJ(t) for t in itertools.product(pairs(p), repeat=r)]


# ---------------------------------------------------------------- tables

_P2_N = {0: {(0, 1): 0, (1, 0): 1, (1, 2): 0}, 1: {(0, 1): 1, (1, 0): 1, (1, 2): 0}}
_P2_NTILDE = {0: {(0, 1): 0, (1, 0): 0, (1, 2): 1}, 1: {(0, 1): 1, (1, 0): 0, (1, 2): 1}}


def n_eps(eps: int, pair: PairAJ) -> int:
    """Leading index of B^(eps)(a, j) in the Y^m X^m expansion (closed form)."""
    p, a = pair.p, pair.a
    if p == 2:
        return _P2_N[eps][(a, pair.two_j)]
    j = pair.two_j // 2
    case = pair.case
    if case == "A":
        n0, n1 = (p - a - 1) // 2 + j, (3 * p - a - 1) // 2 - j
    elif case == "B":
        n0, n1 = (p - a - 1) // 2 - j, (p - a - 1) // 2 + j
    elif case == "C":
        n0, n1 = (2 * p - a - 1) // 2 - j, (2 * p - a - 1) // 2 + j
    else:
        n0, n1 = j - (a + 1) // 2, (2 * p - a - 1) // 2 - j
    return n1 if eps else n0


def n_tilde(eps: int, pair: PairAJ) -> int:
    """Leading index in the X^m Y^m expansion (closed form)."""
    p, a = pair.p, pair.a
    if p == 2:
        return _P2_NTILDE[eps][(a, pair.two_j)]
    j = pair.two_j // 2
    case = pair.case
    if case == "A":
        n0, n1 = (a - p - 1) // 2 + j, (p + a - 1) // 2 - j
    elif case == "B":
        n0, n1 = (p + a - 1) // 2 - j, (p + a - 1) // 2 + j
    elif case == "C":
        n0, n1 = (a - 1) // 2 - j, (a - 1) // 2 + j
    else:
        n0, n1 = (a - 1) // 2 + j, (2 * p + a - 1) // 2 - j
    return n1 if eps else n0


def s_shift(pair: PairAJ) -> int:
    if pair.case not in ("A", "C"):
        raise ValueError(f"s(a, j) is only defined in cases A and C, not {pair.case}")
    p, a = pair.p, pair.a
    if p == 2:
        return 1
    return (p - a + 1) // 2 if a % 2 == 0 else (p - a) // 2


# ---------------------------------------------------------------- polynomials over F_p
# coefficient lists, lowest degree first

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for k, b in enumerate(g):
                out[i + k] = (out[i + k] + a * b) % p
    return _trim(out)


def poly_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    g = _trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = _trim([c % p for c in f])
    inv_lead = inv_mod(g[-1], p)
    quo = [0] * max(len(rem) - len(g) + 1, 0)
    while len(rem) >= len(g):
        shift = len(rem) - len(g)
        c = rem[-1] * inv_lead % p
        quo[shift] = c
        for i, b in enumerate(g):
            rem[shift + i] = (rem[shift + i] - c * b) % p
        _trim(rem)
    return _trim(quo), rem


def poly_from_roots(roots, p: int, lead: int = 1) -> list[int]:
    f = [lead % p]
    for root in roots:
        f = poly_mul(f, [-root % p, 1], p)
    return f


def poly_shift(f: list[int], c: int, p: int) -> list[int]:
    """f(x + c)."""
    out: list[int] = []
    for coeff in reversed(f):
        out = poly_mul(out, [c % p, 1], p)
        out = out or [0]
        out[0] = (out[0] + coeff) % p
        _trim(out)
    return out


def phi(a: int, m: int, p: int) -> list[int]:
    return poly_from_roots([i * (i + a + 1) for i in range(m)], p)


def psi(p: int) -> list[int]:
    return poly_from_roots([i * i for i in range(p)], p)


def psi_j(eps: int, j: int, p: int) -> list[int]:
    """The polynomial psi_j^(eps) (unshifted), p odd."""
    if p == 2:
        raise ValueError("p = 2 uses the explicit B elements")
    if eps == 1:
        quo, rem = poly_divmod(psi(p), [-j * j % p, 1], p)
        assert not rem
        return quo
    if j == 0:
        return poly_from_roots([i * i for i in range(1, p)], p)
    roots = [i * i for i in range(1, p) if i not in (j, p - j)]
    return poly_mul(poly_from_roots(roots, p, lead=2), [0, j * j % p, 1], p)


def half_square(a: int, p: int) -> int:
    """((a + 1) / 2)^2 in F_p, p odd."""
    h = (a + 1) * inv_mod(2, p) % p
    return h * h % p


def psi_polys(a: int, two_j: int, eps: int, p: int) -> list[int]:
    """psi_j^(eps)(x + ((a+1)/2)^2) as a coefficient list."""
    if p == 2:
        raise ValueError("p = 2 uses the explicit B elements")
    return poly_shift(psi_j(eps, two_j // 2, p), half_square(a, p), p)


def n_by_division(eps: int, a: int, j: int, p: int) -> int:
    """Largest n with phi_{a,n}(x) dividing psi_j^(eps)(x + ((a+1)/2)^2); a may be any integer."""
    target = poly_shift(psi_j(eps, j, p), half_square(a, p), p)
    n = 0
    while n <= len(target):
        _, rem = poly_divmod(target, phi(a, n + 1, p), p)
        if rem:
            return n
        n += 1
    raise AssertionError("divisibility never failed")


# ---------------------------------------------------------------- elements

@lru_cache(maxsize=None)
def mu(a: int, r: int, p: int) -> AlgebraElement:
    """binom(H - a - 1, p^r - 1) expanded in the binom(H, i) basis."""
    top = p**r - 1
    return AlgebraElement(p, {(0, i, 0): binom_mod(-a - 1, top - i, p) for i in range(top + 1)})


def _evaluate(poly: list[int], t: AlgebraElement) -> AlgebraElement:
    p = t.p
    out = AlgebraElement.zero(p)
    for coeff in reversed(poly):
        out = out * t + coeff
    return out


@lru_cache(maxsize=None)
def b1(eps: int, pair: PairAJ) -> AlgebraElement:
    """B^(eps)(a, j) in A_1."""
    p, a = pair.p, pair.a
    m = mu(a, 1, p)
    yx = Y(1, p) * X(1, p)
    if p == 2:
        if (a, pair.two_j) == (0, 1):
            return m if eps == 0 else m * yx
        if (a, pair.two_j) == (1, 0):
            return m * yx
        return m * yx + m
    t = m * yx + half_square(a, p)
    return _evaluate(psi_j(eps, pair.two_j // 2, p), t) * m


def b1_xy_form(eps: int, pair: PairAJ) -> AlgebraElement:
    """The same element written through mu_a X Y."""
    p, a = pair.p, pair.a
    m = mu(a, 1, p)
    xy = X(1, p) * Y(1, p)
    if p == 2:
        if (a, pair.two_j) == (0, 1):
            return m if eps == 0 else m * xy
        if (a, pair.two_j) == (1, 0):
            return m * xy + m
        return m * xy
    t = m * xy + half_square(a - 2, p)
    return _evaluate(psi_j(eps, pair.two_j // 2, p), t) * m


def yx_power_targets(a: int, p: int) -> tuple[list[AlgebraElement], list[AlgebraElement]]:
    m = mu(a, 1, p)
    yx = [m * (power_y(k, p) * power_x(k, p)) for k in range(p)]
    xy = [m * (power_x(k, p) * power_y(k, p)) for k in range(p)]
    return yx, xy


def extract_power_coeffs(e: AlgebraElement, a: int, p: int) -> tuple[list[int], list[int]]:
    """Coefficients with e = mu_a sum c_m Y^m X^m = mu_a sum c~_m X^m Y^m (ordinary powers)."""
    yx, xy = yx_power_targets(a, p)
    try:
        c = SpanSolver(yx, p).solve(e)
        ct = SpanSolver(xy, p).solve(e)
    except NotInSpan:
        raise AssertionError(f"element is not of the form mu_{a} * polynomial in YX") from None
    return [int(v) for v in c], [int(v) for v in ct]


@lru_cache(maxsize=None)
def _b1_coeffs(eps: int, pair: PairAJ) -> tuple[int, ...]:
    return tuple(extract_power_coeffs(b1(eps, pair), pair.a, pair.p)[0])


def z_map(eps: int, z: AlgebraElement, pair: PairAJ) -> AlgebraElement:
    """Lift z from level r-1 to level r through the pair (a, j)."""
    p = pair.p
    if pair.case in ("B", "D"):
        return fr_prime(z) * b1(eps, pair)
    s = s_shift(pair)
    lifted = fr_prime(z) * power_x(s, p)
    total = AlgebraElement.zero(p)
    for m, c in enumerate(_b1_coeffs(eps, pair)):
        if not c:
            continue
        if m < s:
            raise AssertionError(f"coefficient at {m} below the shift {s}")
        total = total + (power_y(m, p) * power_x(m - s, p)).scale(c) * lifted
    return mu(pair.a, 1, p) * total


@lru_cache(maxsize=None)
def b_element(eps: tuple, tup: TupleAJ) -> AlgebraElement:
    """B^(eps)(a, j) for an r-tuple, built by lifting from the last pair inwards."""
    eps = tuple(int(e) for e in eps)
    if len(eps) != tup.r:
        raise ValueError(f"eps has length {len(eps)} but the tuple has {tup.r} pairs")
    if tup.r == 1:
        return b1(eps[0], tup.pairs[0])
    return z_map(eps[0], b_element(eps[1:], tup.tail()), tup.pairs[0])


def idempotent(tup: TupleAJ) -> AlgebraElement:
    """E(a, j) = B^(0,...,0)(a, j)."""
    return b_element((0,) * tup.r, tup)


def weight_index(tup: TupleAJ) -> int:
    p = tup.p
    total = 0
    for i, pr in enumerate(tup.pairs):
        b = pr.a - p if pr.case in ("A", "C") else pr.a
        total += b * p**i
    return total % p**tup.r
