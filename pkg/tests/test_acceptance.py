"""Acceptance criteria, one test function per criterion, at exact equality.

Grid points are parametrized; conftest.py folds the outcomes into one
PASS/FAIL line per criterion in the terminal summary.
"""

from math import comb

import pytest

from sl2hyper.blocks import weight, x_set
from sl2hyper.verify import (
    GRID, RunSettings, check_action_product_rules, check_dimension_audit, check_duplicate_rule,
    check_idempotent_system, check_loewy_structure, check_multiplication_oracle, check_n_tables,
    check_oracle_faithful, check_power_coefficients, check_symmetry, check_weight_fixation, _reports,
)

grid = pytest.mark.parametrize("p,r", GRID, ids=[f"p{p}r{r}" for p, r in GRID])


def assert_check(result):
    passed, detail = result
    assert passed, detail


@grid
def test_criterion_01_idempotent_system(p, r):
    assert_check(check_idempotent_system(RunSettings(p, r)))


@grid
def test_criterion_02_dimension_audit(p, r):
    assert_check(check_dimension_audit(RunSettings(p, r)))
    assert sum(rep.dim for rep in _reports(p, r, False)) == p ** (2 * r)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_criterion_03_n_tables(p):
    assert_check(check_n_tables(RunSettings(p, 1)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_criterion_04_power_coefficients(p):
    assert_check(check_power_coefficients(RunSettings(p, 1)))


@grid
def test_criterion_05_action_and_product_rules(p, r):
    assert_check(check_action_product_rules(RunSettings(p, r)))


@grid
def test_criterion_06_loewy_structure(p, r):
    assert_check(check_loewy_structure(RunSettings(p, r)))
    for rep in _reports(p, r, True):
        w = x_set(rep.tuple).w
        for pim in rep.pims:
            top = w - weight(pim.eps)
            assert len(pim.loewy) == w + 1 - weight(pim.eps)
            assert pim.loewy == [comb(top, i) for i in range(top + 1)]
            assert pim.rigid


@grid
def test_criterion_07_symmetry(p, r):
    assert_check(check_symmetry(RunSettings(p, r)))
    assert all(rep.symmetric for rep in _reports(p, r, True))


@pytest.mark.parametrize("p,r", [(2, 2), (3, 1), (3, 2)])
def test_criterion_08_weight_fixation(p, r):
    assert_check(check_weight_fixation(RunSettings(p, r)))


@grid
def test_criterion_09_multiplication_oracle(p, r):
    assert_check(check_multiplication_oracle(RunSettings(p, r, seed=2024)))
    if (p, r) in {(2, 1), (2, 2), (3, 1)}:
        assert_check(check_oracle_faithful(RunSettings(p, r)))


@grid
def test_criterion_10_duplicate_rule(p, r):
    assert_check(check_duplicate_rule(RunSettings(p, r, seed=2024)))
