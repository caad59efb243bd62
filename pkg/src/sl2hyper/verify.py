"""Named verification checks, run per grid point (p, r).

The quick level uses only the 0/1 combinatorics and polynomial tables; the
full level adds every check that multiplies actual elements or builds
operator matrices.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import linalg
from .blocks import block_decomposition, cross_block_orthogonal, x_set
from .hyperalgebra import AlgebraElement, H, X, Y, basis_u, operator_matrix
from .idempotents import (
    b_element,
    extract_power_coeffs,
    b1,
    idempotent,
    n_by_division,
    n_eps,
    n_tilde,
    pairs,
    tuples,
)

GRID = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1))
FAITHFUL_LIMIT = 729  # largest p^(3r) for which the basis rank check runs
RANDOM_PAIRS = 200
DUPLICATE_SAMPLES = 100


@dataclass
class RunSettings:
    p: int
    r: int
    seed: int = 0
    oracle_degree: int | None = None

    @property
    def degree(self) -> int:
        return self.oracle_degree if self.oracle_degree is not None else 2 * self.p**self.r


@dataclass
class CheckResult:
    name: str
    p: int
    r: int
    passed: bool
    seconds: float
    detail: str
    reproduce: str

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "p": self.p,
            "r": self.r,
            "passed": self.passed,
            "detail": self.detail,
            "reproduce": self.reproduce,
        }
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


@lru_cache(maxsize=None)
def _reports(p: int, r: int, oracle: bool):
    return block_decomposition(p, r, dim_cap=p ** (2 * r), oracle=oracle)


def _failed_blocks(reports, names) -> list[str]:
    return [rep.tuple.label for rep in reports if not all(rep.checks[n] for n in names)]


def _block_verdict(reports, names) -> tuple[bool, str]:
    bad = _failed_blocks(reports, names)
    if bad:
        return False, f"failing blocks: {' '.join(bad)}"
    return True, f"{len(reports)} blocks"


# ---------------------------------------------------------------- quick checks

def check_dimension_audit(cfg: RunSettings) -> tuple[bool, str]:
    total = sum(2 ** x_set(t).w for t in tuples(cfg.p, cfg.r))
    want = cfg.p ** (2 * cfg.r)
    return total == want, f"sum 2^w = {total}, p^(2r) = {want}"


def check_n_tables(cfg: RunSettings) -> tuple[bool, str]:
    p = cfg.p
    bad = []
    for pr in pairs(p):
        j = pr.two_j // 2
        for eps in (0, 1):
            if n_by_division(eps, pr.a, j, p) != n_eps(eps, pr):
                bad.append(f"n^({eps})({pr.label})")
            if n_by_division(eps, -pr.a, j, p) != n_tilde(eps, pr):
                bad.append(f"n~^({eps})({pr.label})")
    return not bad, "mismatch: " + " ".join(bad) if bad else f"{2 * len(pairs(p))} pairs of entries"


def check_combinatorial_rules(cfg: RunSettings) -> tuple[bool, str]:
    names = ("rule_radical", "rule_radical_series", "rule_loewy_dims", "rule_symmetric")
    return _block_verdict(_reports(cfg.p, cfg.r, False), names)


# ---------------------------------------------------------------- full checks

def check_idempotent_system(cfg: RunSettings) -> tuple[bool, str]:
    p, r = cfg.p, cfg.r
    es = [idempotent(t) for t in tuples(p, r)]
    total = sum(es, AlgebraElement.zero(p)) == AlgebraElement.one(p)
    square = all(e * e == e for e in es)
    inside = all(e.in_a(r) for e in es)
    orth = cross_block_orthogonal(p, r)
    ok = total and square and orth and inside
    return ok, f"{len(es)} idempotents: sum=1 {total}, E^2=E {square}, orthogonal {orth}, in A_r {inside}"


def check_power_coefficients(cfg: RunSettings) -> tuple[bool, str]:
    p = cfg.p
    bad = []
    for pr in pairs(p):
        for eps in (0, 1):
            c, ct = extract_power_coeffs(b1(eps, pr), pr.a, p)
            first = next(i for i, v in enumerate(c) if v)
            first_t = next(i for i, v in enumerate(ct) if v)
            if (first, first_t) != (n_eps(eps, pr), n_tilde(eps, pr)):
                bad.append(f"{eps}:{pr.label}")
    return not bad, "mismatch: " + " ".join(bad) if bad else f"{2 * len(pairs(p))} elements"


def check_action_product_rules(cfg: RunSettings) -> tuple[bool, str]:
    return _block_verdict(_reports(cfg.p, cfg.r, True), ("basis_independent", "product_rule", "yx_action"))


def check_loewy_structure(cfg: RunSettings) -> tuple[bool, str]:
    names = ("radical", "radical_powers", "nilpotency_index", "primitive", "pim_basis", "containment", "loewy", "rigid")
    return _block_verdict(_reports(cfg.p, cfg.r, True), names)


def check_symmetry(cfg: RunSettings) -> tuple[bool, str]:
    return _block_verdict(_reports(cfg.p, cfg.r, True), ("symmetric",))


def check_weight_fixation(cfg: RunSettings) -> tuple[bool, str]:
    return _block_verdict(_reports(cfg.p, cfg.r, True), ("weight_fixation",))


def generators(p: int, r: int) -> list[AlgebraElement]:
    return [f(p**i, p) for i in range(r) for f in (X, Y, H)]


def random_element(rng: random.Random, p: int, r: int, terms: int = 3) -> AlgebraElement:
    q = p**r
    out = AlgebraElement.zero(p)
    for _ in range(rng.randint(1, terms)):
        mono = (rng.randrange(q), rng.randrange(q), rng.randrange(q))
        out = out + AlgebraElement.monomial(p, *mono, rng.randrange(1, p))
    return out


def check_multiplication_oracle(cfg: RunSettings) -> tuple[bool, str]:
    p, r, D = cfg.p, cfg.r, cfg.degree
    rng = random.Random(cfg.seed)
    gens = generators(p, r)
    cases = [(a, b) for a in gens for b in gens]
    cases += [(random_element(rng, p, r), random_element(rng, p, r)) for _ in range(RANDOM_PAIRS)]
    for a, b in cases:
        if operator_matrix(a * b, D, r) != operator_matrix(a, D, r) @ operator_matrix(b, D, r):
            return False, f"disagreement for ({a}) * ({b}) at D={D}"
    return True, f"{len(gens) ** 2} generator pairs and {RANDOM_PAIRS} random pairs at D={D}"


def check_oracle_faithful(cfg: RunSettings) -> tuple[bool, str]:
    p, r, D = cfg.p, cfg.r, cfg.degree
    rows = np.array([operator_matrix(AlgebraElement.monomial(p, *mono), D, r).flat() for mono in basis_u(p, r)])
    got = linalg.rank(rows, p)
    return got == len(rows), f"rank {got} of {len(rows)} basis operators at D={D}"


def check_duplicate_rule(cfg: RunSettings) -> tuple[bool, str]:
    p, r = cfg.p, cfg.r
    rng = random.Random(cfg.seed)
    all_tuples = tuples(p, r)
    for _ in range(DUPLICATE_SAMPLES):
        tup = rng.choice(all_tuples)
        eps = tuple(rng.randrange(2) for _ in range(r))
        other = tuple(e if act else rng.randrange(2) for e, act in zip(eps, tup.active))
        if b_element(eps, tup) != b_element(other, tup):
            return False, f"B^({eps}) != B^({other}) for {tup.label}"
    return True, f"{DUPLICATE_SAMPLES} samples"


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[RunSettings], tuple[bool, str]]
    full_only: bool
    applies: Callable[[int, int], bool] = lambda p, r: True


CHECKS = (
    Check("dimension_audit", check_dimension_audit, False),
    Check("n_tables", check_n_tables, False, lambda p, r: p > 2),
    Check("combinatorial_rules", check_combinatorial_rules, False),
    Check("idempotent_system", check_idempotent_system, True),
    Check("power_coefficients", check_power_coefficients, True),
    Check("action_product_rules", check_action_product_rules, True),
    Check("loewy_structure", check_loewy_structure, True),
    Check("symmetry", check_symmetry, True),
    Check("weight_fixation", check_weight_fixation, True),
    Check("multiplication_oracle", check_multiplication_oracle, True),
    Check("oracle_faithful", check_oracle_faithful, True, lambda p, r: p ** (3 * r) <= FAITHFUL_LIMIT),
    Check("duplicate_rule", check_duplicate_rule, True),
)

CHECK_NAMES = tuple(c.name for c in CHECKS)


def reproduce_command(name: str, cfg: RunSettings, level: str) -> str:
    cmd = f"sl2hyper verify --p {cfg.p} --r {cfg.r} --level {level} --seed {cfg.seed} --check {name}"
    if cfg.oracle_degree is not None:
        cmd += f" --oracle-degree {cfg.oracle_degree}"
    return cmd


def run_checks(cfg: RunSettings, level: str = "full", only: list[str] | None = None) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    unknown = set(only or ()) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    results = []
    for check in CHECKS:
        if only and check.name not in only:
            continue
        if check.full_only and level == "quick" and not only:
            continue
        if not check.applies(cfg.p, cfg.r):
            continue
        start = time.perf_counter()
        try:
            passed, detail = check.run(cfg)
        except Exception as exc:  # a crash is a failure of that check, reported by name
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(
            CheckResult(
                check.name, cfg.p, cfg.r, bool(passed), time.perf_counter() - start, detail,
                reproduce_command(check.name, cfg, level),
            )
        )
    return results
