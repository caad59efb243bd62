"""Block algebras A_r E(a, j) and their projective indecomposable modules.

Every structural statement is available twice: from the 0/1 combinatorics of
eps-vectors, and from exact linear algebra on the actual elements of A_r.
A block's basis is indexed by the eps-vectors of its X-set, in
lexicographic order; subspaces are given as coordinate rows in that basis.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import linalg
from .hyperalgebra import AlgebraElement, SpanSolver, X, Y, basis_a
from .idempotents import TupleAJ, b_element, idempotent, mu, tuples, weight_index

DEFAULT_DIM_CAP = 2**16


class CapExceeded(ValueError):
    def __init__(self, p: int, r: int, cap: int):
        self.size = p ** (2 * r)
        self.cap = cap
        super().__init__(f"dim A_r = p^(2r) = {self.size} exceeds the cap {cap} (p={p}, r={r})")


# ---------------------------------------------------------------- eps-vectors

def weight(eps) -> int:
    return sum(1 for e in eps if e)


def distance(eps, other) -> int:
    return sum(1 for a, b in zip(eps, other) if a != b)


def leq(eps, other) -> bool:
    return all(a <= b for a, b in zip(eps, other))


def unit(s: int, r: int) -> tuple:
    return tuple(1 if i == s else 0 for i in range(r))


def bits(eps) -> str:
    return "".join(str(e) for e in eps)


def parse_bits(text: str) -> tuple:
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"eps {text!r} must be a string of 0s and 1s")
    return tuple(int(c) for c in text)


@dataclass(frozen=True)
class XSet:
    tuple: TupleAJ
    members: tuple
    tau: tuple
    w: int

    def index(self, eps) -> int:
        return self.members.index(tuple(eps))


def x_set(tup: TupleAJ) -> XSet:
    """Eps-vectors vanishing at every inactive position."""
    active = tup.active
    members = tuple(
        eps for eps in itertools.product((0, 1), repeat=tup.r) if all(act or not e for e, act in zip(eps, active))
    )
    tau = tuple(int(act) for act in active)
    return XSet(tup, members, tau, sum(active))


def check_member(eps, tup: TupleAJ) -> tuple:
    eps = tuple(eps)
    if len(eps) != tup.r:
        raise ValueError(f"eps has length {len(eps)}, expected {tup.r}")
    for s, (e, act) in enumerate(zip(eps, tup.active)):
        if e and not act:
            raise ValueError(f"eps is not in the X-set: position {s} must be 0 for pair {tup.pairs[s].label}")
    return eps


# ---------------------------------------------------------------- combinatorial rules

def yx_action(s: int, eps, tup: TupleAJ) -> dict:
    """Y^(p^s) X^(p^s) B^(eps) as {eps-vector: coefficient}."""
    eps = tuple(eps)
    pair = tup.pairs[s]
    out = {}
    if pair.alpha:
        out[eps] = pair.alpha
    if eps[s] == 0 and pair.beta:
        out[tuple(e | u for e, u in zip(eps, unit(s, tup.r)))] = pair.beta
    return out


def product(eps, eps_t, tup: TupleAJ = None):
    """B^(eps) B^(eps_t): None when the supports overlap, else the join."""
    if any(a and b for a, b in zip(eps, eps_t)):
        return None
    return tuple(a | b for a, b in zip(eps, eps_t))


def pim_basis(eps, tup: TupleAJ) -> list:
    eps = check_member(eps, tup)
    return [theta for theta in x_set(tup).members if leq(eps, theta)]


def radical_power(i: int, tup: TupleAJ) -> list:
    return [theta for theta in x_set(tup).members if weight(theta) >= i]


@dataclass(frozen=True)
class LoewyLayer:
    index: int
    members: tuple
    multiplicity: int


@dataclass(frozen=True)
class LoewySeries:
    eps: tuple
    layers: tuple

    @property
    def length(self) -> int:
        return len(self.layers)

    @property
    def dims(self) -> list:
        return [layer.multiplicity for layer in self.layers]


def loewy_series(eps, tup: TupleAJ) -> LoewySeries:
    eps = check_member(eps, tup)
    top = x_set(tup).w - weight(eps)
    basis = pim_basis(eps, tup)
    layers = tuple(
        LoewyLayer(i, tuple(t for t in basis if distance(t, eps) == i), comb(top, i)) for i in range(top + 1)
    )
    return LoewySeries(eps, layers)


def radical_series_members(eps, tup: TupleAJ) -> list:
    """rad^i of the PIM for i = 0..L, as lists of spanning eps-vectors."""
    eps = check_member(eps, tup)
    basis = pim_basis(eps, tup)
    length = x_set(tup).w + 1 - weight(eps)
    return [[t for t in basis if distance(t, eps) >= i] for i in range(length + 1)]


def socle_series(eps, tup: TupleAJ) -> list:
    """soc^i of the PIM for i = 0..L, read off the radical series (rigidity)."""
    rads = radical_series_members(eps, tup)
    length = len(rads) - 1
    return [rads[length - i] for i in range(length + 1)]


def rule_table(xs: XSet) -> np.ndarray:
    """Structure constants predicted by the product rule."""
    n = len(xs.members)
    table = np.zeros((n, n, n), dtype=np.int64)
    for i, a in enumerate(xs.members):
        for k, b in enumerate(xs.members):
            c = product(a, b)
            if c is not None:
                table[i, k, xs.index(c)] = 1
    return table


def dot_graph(eps, tup: TupleAJ) -> str:
    """Digraph of the PIM: nodes are basis eps-vectors, edges the Y^(p^s) X^(p^s) transitions."""
    eps = check_member(eps, tup)
    basis = pim_basis(eps, tup)
    name = f"pim_{tup.label.replace(':', '_').replace(',', '__')}_{bits(eps)}"
    lines = [f'digraph "{name}" {{']
    for t in basis:
        lines.append(f'  "{bits(t)}" [label="{bits(t)}\\nW={weight(t)}"];')
    for t in basis:
        for s in range(tup.r):
            if t[s] == 0 and tup.active[s]:
                target = tuple(e | u for e, u in zip(t, unit(s, tup.r)))
                lines.append(f'  "{bits(t)}" -> "{bits(target)}" [label="{s}"];')
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------- linear algebra on a structure table

class StructureAlgebra:
    """Commutative algebra given by a basis-indexed structure table over F_p."""

    def __init__(self, p: int, table: np.ndarray):
        self.p = p
        self.table = table % p
        self.dim = table.shape[0]

    def mult(self, u, v) -> np.ndarray:
        return np.einsum("i,k,ikl->l", np.asarray(u) % self.p, np.asarray(v) % self.p, self.table) % self.p

    def left_matrix(self, y) -> np.ndarray:
        """Matrix L with x @ L = y * x."""
        return np.einsum("i,ikl->kl", np.asarray(y) % self.p, self.table) % self.p

    def power(self, u, k: int) -> np.ndarray:
        out = None
        base = np.asarray(u) % self.p
        while k:
            if k & 1:
                out = base if out is None else self.mult(out, base)
            k >>= 1
            if k:
                base = self.mult(base, base)
        return out

    def products(self, left, right) -> np.ndarray:
        left, right = np.asarray(left), np.asarray(right)
        if left.size == 0 or right.size == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        rows = np.einsum("ai,bk,ikl->abl", left, right, self.table).reshape(-1, self.dim) % self.p
        return linalg.row_space(rows, self.p, self.dim)

    def radical(self) -> np.ndarray:
        """Kernel of x -> x^(p^K) with p^K >= dim; the nilradical of a commutative algebra."""
        k = 1
        while self.p**k < self.dim:
            k += 1
        frob = np.array([self.power(row, self.p**k) for row in np.eye(self.dim, dtype=np.int64)])
        return linalg.row_space(linalg.nullspace(frob.T, self.p), self.p, self.dim)

    def radical_powers(self, upto: int) -> list:
        """[rad^0, rad^1, ..., rad^upto] as row spaces."""
        rad = self.radical()
        out = [np.eye(self.dim, dtype=np.int64), rad]
        while len(out) <= upto:
            out.append(self.products(out[-1], rad))
        return out[: upto + 1]

    def annihilator_in(self, module, ideal) -> np.ndarray:
        """{x in module : ideal * x = 0}."""
        module = np.asarray(module)
        if module.size == 0:
            return module.reshape(0, self.dim)
        ideal = np.asarray(ideal)
        if ideal.size == 0:
            return linalg.row_space(module, self.p, self.dim)
        conds = np.concatenate([module @ self.left_matrix(y) % self.p for y in ideal], axis=1)
        coeffs = linalg.nullspace(conds.T, self.p)
        if coeffs.size == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        return linalg.row_space(coeffs @ module % self.p, self.p, self.dim)


def unit_rows(members, xs: XSet) -> np.ndarray:
    n = len(xs.members)
    rows = np.zeros((len(members), n), dtype=np.int64)
    for row, eps in enumerate(members):
        rows[row, xs.index(eps)] = 1
    return rows


def _dim(space) -> int:
    return int(np.asarray(space).shape[0])


def module_radical_series(alg: StructureAlgebra, module, rad_powers: list) -> list:
    out = [linalg.row_space(module, alg.p, alg.dim)]
    for i in range(1, len(rad_powers)):
        out.append(alg.products(rad_powers[i], module))
    return out


def module_socle_series(alg: StructureAlgebra, module, rad_powers: list) -> list:
    return [alg.annihilator_in(module, rad_powers[i]) for i in range(len(rad_powers))]


# ---------------------------------------------------------------- blocks built from actual elements

class BlockAlgebra:
    """The block A_r E(a, j) with basis B^(theta), theta in the X-set."""

    def __init__(self, tup: TupleAJ):
        self.tuple = tup
        self.p = tup.p
        self.xset = x_set(tup)
        self.members = self.xset.members
        self.basis = {theta: b_element(theta, tup) for theta in self.members}
        # raises DependentTargets if the B^(theta) are not independent
        self.solver = SpanSolver([self.basis[t] for t in self.members], self.p)
        self._table = None

    def coords(self, e: AlgebraElement) -> np.ndarray:
        return self.solver.solve(e)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            n = len(self.members)
            table = np.zeros((n, n, n), dtype=np.int64)
            for i, a in enumerate(self.members):
                for k, b in enumerate(self.members):
                    if k < i:
                        table[i, k] = table[k, i]
                    else:
                        table[i, k] = self.coords(self.basis[a] * self.basis[b])
            self._table = table
        return self._table

    def algebra(self) -> StructureAlgebra:
        return StructureAlgebra(self.p, self.table)

    def pim_span(self, eps) -> np.ndarray:
        """Row space of A_r * B^(eps), from every monomial of A_r times B^(eps)."""
        gen = self.basis[tuple(eps)]
        rows = [self.coords(AlgebraElement.monomial(self.p, *mono) * gen) for mono in basis_a(self.p, self.tuple.r)]
        return linalg.row_space(np.array(rows), self.p, len(self.members))


def brute_radical(block: BlockAlgebra) -> np.ndarray:
    return block.algebra().radical()


def symmetric_form(table: np.ndarray, xs: XSet, p: int) -> tuple[np.ndarray, bool]:
    """Gram matrix of (x, y) -> f(xy), f picking the B^(tau) coordinate; and whether it is the tau-complement pairing."""
    gram = table[:, :, xs.index(xs.tau)] % p
    expected = np.zeros_like(gram)
    for i, theta in enumerate(xs.members):
        comp = tuple(t - e for t, e in zip(xs.tau, theta))
        expected[i, xs.index(comp)] = 1
    nondegenerate = linalg.rank(gram, p) == len(xs.members)
    return gram, bool(nondegenerate and np.array_equal(gram, expected))


# ---------------------------------------------------------------- reports

@dataclass
class PimReport:
    eps: tuple
    dim: int
    loewy: list
    rigid: bool

    def to_json(self) -> dict:
        return {"eps": bits(self.eps), "dim": self.dim, "loewy": list(self.loewy), "rigid": self.rigid}


@dataclass
class BlockReport:
    tuple: TupleAJ
    w: int
    dim: int
    weight_index: int
    pims: list
    symmetric: bool
    checks: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def p(self) -> int:
        return self.tuple.p

    @property
    def r(self) -> int:
        return self.tuple.r

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "tuple": [{"a": pr.a, "two_j": pr.two_j, "case": pr.case} for pr in self.tuple.pairs],
            "w": self.w,
            "dim": self.dim,
            "weight_index": self.weight_index,
            "pims": [pim.to_json() for pim in self.pims],
            "symmetric": self.symmetric,
            "checks": dict(self.checks),
        }

    def to_text(self) -> str:
        lines = [
            f"block {self.tuple.label}  cases {''.join(pr.case for pr in self.tuple.pairs)}  "
            f"w={self.w} dim={self.dim} weight={self.weight_index} symmetric={self.symmetric}"
        ]
        for pim in self.pims:
            lines.append(f"  pim eps={bits(pim.eps)} dim={pim.dim} loewy={pim.loewy} rigid={pim.rigid}")
        failed = [name for name, ok in self.checks.items() if not ok]
        lines.append(f"  checks: {len(self.checks) - len(failed)}/{len(self.checks)} passed" + (f"; FAILED {failed}" if failed else ""))
        return "\n".join(lines)


def _combinatorial_pim(alg: StructureAlgebra, xs: XSet, eps, tup: TupleAJ) -> tuple[PimReport, dict]:
    """PIM report computed on the rule table alone."""
    module = unit_rows(pim_basis(eps, tup), xs)
    length = xs.w + 1 - weight(eps)
    rad_powers = alg.radical_powers(length)
    rads = module_radical_series(alg, module, rad_powers)
    socs = module_socle_series(alg, module, rad_powers)
    expected = [unit_rows(m, xs) for m in radical_series_members(eps, tup)]
    loewy = [_dim(rads[i]) - _dim(rads[i + 1]) for i in range(length)]
    rigid = all(linalg.same_space(rads[i], socs[length - i], alg.p) for i in range(length + 1))
    checks = {
        "rule_radical_series": all(linalg.same_space(a, b, alg.p) for a, b in zip(rads, expected)),
        "rule_loewy_dims": loewy == loewy_series(eps, tup).dims,
    }
    return PimReport(tuple(eps), _dim(module), loewy, rigid), checks


def block_report(tup: TupleAJ, oracle: bool = True) -> BlockReport:
    start = time.perf_counter()
    p, r = tup.p, tup.r
    xs = x_set(tup)
    n = len(xs.members)
    checks: dict[str, bool] = {}

    rules = StructureAlgebra(p, rule_table(xs))
    checks["rule_radical"] = linalg.same_space(rules.radical(), unit_rows(radical_power(1, tup), xs), p)
    pims = []
    for eps in xs.members:
        pim, pim_checks = _combinatorial_pim(rules, xs, eps, tup)
        pims.append(pim)
        for name, ok in pim_checks.items():
            checks[name] = checks.get(name, True) and ok
    _, symmetric = symmetric_form(rules.table, xs, p)
    checks["rule_symmetric"] = symmetric

    if oracle:
        block = BlockAlgebra(tup)
        checks["basis_independent"] = True  # BlockAlgebra raised otherwise
        checks["product_rule"] = bool(np.array_equal(block.table, rules.table))
        checks["yx_action"] = _check_yx_action(block)
        alg = block.algebra()
        rad_powers = alg.radical_powers(xs.w + 1)
        checks["radical"] = linalg.same_space(rad_powers[1], unit_rows(radical_power(1, tup), xs), p)
        checks["radical_powers"] = all(
            linalg.same_space(rad_powers[i], unit_rows(radical_power(i, tup), xs), p) for i in range(xs.w + 2)
        )
        checks["nilpotency_index"] = _dim(rad_powers[xs.w]) > 0 and _dim(rad_powers[xs.w + 1]) == 0
        checks["primitive"] = n - _dim(rad_powers[1]) == 1
        spans = {eps: block.pim_span(eps) for eps in xs.members}
        checks["pim_basis"] = all(
            linalg.same_space(spans[eps], unit_rows(pim_basis(eps, tup), xs), p) for eps in xs.members
        )
        checks["containment"] = all(
            (linalg.rank(np.concatenate([spans[e], spans[f]]), p) == _dim(spans[e])) == leq(e, f)
            for e in xs.members
            for f in xs.members
        )
        loewy_ok, rigid_ok = True, True
        for pim in pims:
            eps = pim.eps
            length = xs.w + 1 - weight(eps)
            module = spans[eps]
            rads = module_radical_series(alg, module, rad_powers[: length + 1])
            socs = module_socle_series(alg, module, rad_powers[: length + 1])
            expected = [unit_rows(m, xs) for m in radical_series_members(eps, tup)]
            dims = [_dim(rads[i]) - _dim(rads[i + 1]) for i in range(length)]
            loewy_ok &= all(linalg.same_space(a, b, p) for a, b in zip(rads, expected))
            loewy_ok &= dims == loewy_series(eps, tup).dims and _dim(rads[length]) == 0
            rigid = all(linalg.same_space(socs[i], expected[length - i], p) for i in range(length + 1))
            rigid_ok &= rigid
            pim.loewy = dims
            pim.rigid = rigid and pim.rigid
        checks["loewy"] = loewy_ok
        checks["rigid"] = rigid_ok
        _, sym = symmetric_form(block.table, xs, p)
        checks["symmetric"] = sym
        symmetric = symmetric and sym
        m = mu(weight_index(tup), r, p)
        checks["weight_fixation"] = all(m * block.basis[t] == block.basis[t] for t in xs.members)

    return BlockReport(
        tuple=tup,
        w=xs.w,
        dim=n,
        weight_index=weight_index(tup),
        pims=pims,
        symmetric=symmetric,
        checks=checks,
        seconds=time.perf_counter() - start,
    )


def _check_yx_action(block: BlockAlgebra) -> bool:
    p, tup = block.p, block.tuple
    xs = block.xset
    for s in range(tup.r):
        u = Y(p**s, p) * X(p**s, p)
        for theta in xs.members:
            got = block.coords(u * block.basis[theta])
            want = np.zeros(len(xs.members), dtype=np.int64)
            for eps, c in yx_action(s, theta, tup).items():
                want[xs.index(eps)] = c
            if not np.array_equal(got, want):
                return False
    return True


def check_cap(p: int, r: int, dim_cap: int = DEFAULT_DIM_CAP) -> None:
    if p ** (2 * r) > dim_cap:
        raise CapExceeded(p, r, dim_cap)


def block_decomposition(p: int, r: int, dim_cap: int = DEFAULT_DIM_CAP, oracle: bool = True) -> list[BlockReport]:
    """Reports for every block of A_r, in lexicographic tuple order."""
    check_cap(p, r, dim_cap)
    return [block_report(tup, oracle=oracle) for tup in tuples(p, r)]


def cross_block_orthogonal(p: int, r: int) -> bool:
    es = [idempotent(t) for t in tuples(p, r)]
    return all((es[i] * es[k]).is_zero() for i in range(len(es)) for k in range(len(es)) if i != k)


@dataclass
class PimDetail:
    tuple: TupleAJ
    eps: tuple
    basis: list
    layers: list
    rigid: bool
    socle: list
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "p": self.tuple.p,
            "r": self.tuple.r,
            "tuple": [{"a": pr.a, "two_j": pr.two_j, "case": pr.case} for pr in self.tuple.pairs],
            "eps": bits(self.eps),
            "dim": len(self.basis),
            "basis": [bits(t) for t in self.basis],
            "layers": [[bits(t) for t in layer] for layer in self.layers],
            "loewy": [len(layer) for layer in self.layers],
            "rigid": self.rigid,
            "socle": [bits(t) for t in self.socle],
            "checks": dict(self.checks),
        }

    def to_text(self) -> str:
        lines = [f"pim eps={bits(self.eps)} of block {self.tuple.label}  dim={len(self.basis)}"]
        lines.append("  basis: " + " ".join(bits(t) for t in self.basis))
        for i, layer in enumerate(self.layers):
            lines.append(f"  layer {i}: " + " ".join(bits(t) for t in layer))
        lines.append(f"  rigid={self.rigid} socle=" + " ".join(bits(t) for t in self.socle))
        failed = [name for name, ok in self.checks.items() if not ok]
        lines.append(f"  checks: {len(self.checks) - len(failed)}/{len(self.checks)} passed" + (f"; FAILED {failed}" if failed else ""))
        return "\n".join(lines)


def pim_report(tup: TupleAJ, eps, oracle: bool = True) -> PimDetail:
    """One PIM A_r B^(eps): basis, Loewy layers, and brute-force cross-checks."""
    eps = check_member(eps, tup)
    p = tup.p
    xs = x_set(tup)
    series = loewy_series(eps, tup)
    layers = [list(layer.members) for layer in series.layers]
    expected = [unit_rows(m, xs) for m in radical_series_members(eps, tup)]
    length = series.length
    checks = {"layer_dims": series.dims == [comb(xs.w - weight(eps), i) for i in range(length)]}
    algebras = [("rule", StructureAlgebra(p, rule_table(xs)), unit_rows(pim_basis(eps, tup), xs))]
    if oracle:
        block = BlockAlgebra(tup)
        algebras.append(("oracle", block.algebra(), block.pim_span(eps)))
    rigid = True
    for name, alg, module in algebras:
        rad_powers = alg.radical_powers(length)
        rads = module_radical_series(alg, module, rad_powers)
        socs = module_socle_series(alg, module, rad_powers)
        checks[f"{name}_radical_series"] = all(linalg.same_space(a, b, p) for a, b in zip(rads, expected))
        checks[f"{name}_socle"] = linalg.same_space(socs[1], unit_rows([xs.tau], xs), p)
        this_rigid = all(linalg.same_space(socs[i], expected[length - i], p) for i in range(length + 1))
        checks[f"{name}_rigid"] = this_rigid
        rigid &= this_rigid
    return PimDetail(tup, eps, pim_basis(eps, tup), layers, rigid, [xs.tau], checks)
