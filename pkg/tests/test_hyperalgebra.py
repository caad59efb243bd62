import random
import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sl2hyper.arith import ModulusError
from sl2hyper.hyperalgebra import (
    AlgebraElement, DependentTargets, H, NotInSpan, PBWMonomial, SpanSolver, X, Y, basis_a,
    basis_u, degree_components, fr, fr_prime, multiply, operator_matrix, power_x, solve_in_span, to_text,
)
from sl2hyper.idempotents import mu
from sl2hyper.verify import generators, random_element


def elements(p, r, terms=3):
    q = p**r
    mono = st.tuples(st.integers(0, q - 1), st.integers(0, q - 1), st.integers(0, q - 1))
    return st.dictionaries(mono, st.integers(1, p - 1), max_size=terms).map(lambda t: AlgebraElement(p, t))


def test_multiply_examples():
    for p in (2, 3, 5):
        assert X(1, p) * Y(1, p) == Y(1, p) * X(1, p) + H(1, p)
    assert (X(1, 2) * X(1, 2)).is_zero()
    e = Y(2, 3) * H(1, 3) * X(1, 3)
    assert AlgebraElement.one(3) * e == e == e * AlgebraElement.one(3)


def test_canonical_text():
    assert to_text(X(1, 3) * Y(1, 3)) == "Y(1)*X(1) + H(1)"
    assert to_text(AlgebraElement.one(5)) == "1"
    assert to_text(AlgebraElement.zero(5)) == "0"
    assert to_text(AlgebraElement.monomial(5, 2, 0, 1, 3)) == "3*Y(2)*X(1)"


def test_no_stored_zeros():
    e = AlgebraElement(3, {(1, 0, 0): 3, (0, 0, 1): 1})
    assert list(e.terms) == [PBWMonomial(0, 0, 1)]
    assert (X(1, 3) - X(1, 3)).is_zero()


def test_membership():
    p = 3
    e = Y(2, p) * H(1, p) * X(2, p)
    assert e.in_u(1) and e.in_a(1) and not e.in_u0(1)
    assert H(4, p).in_u0(2) and not H(4, p).in_u(1)
    assert not X(1, p).in_a()
    assert mu(0, 2, p).in_u0(2)


def test_mixed_moduli_fault():
    with pytest.raises(ModulusError):
        X(1, 2) * X(1, 3)
    with pytest.raises(ModulusError):
        X(1, 2) + X(1, 3)


def test_degree_components():
    e = Y(2, 3) * H(1, 3) * X(2, 3)
    assert set(degree_components(e)) == {0}
    assert set(degree_components(X(3, 5))) == {3}
    mixed = X(1, 3) + Y(2, 3) + H(1, 3)
    parts = degree_components(mixed)
    assert set(parts) == {-2, 0, 1}
    assert sum(parts.values(), AlgebraElement.zero(3)) == mixed


def test_degree_additivity():
    rng = random.Random(5)
    p = 3
    for _ in range(50):
        a, b = random_element(rng, p, 2), random_element(rng, p, 2)
        da, db = degree_components(a), degree_components(b)
        for d1, e1 in da.items():
            for d2, e2 in db.items():
                assert set(degree_components(e1 * e2)) <= {d1 + d2}


def test_degree_zero_part_lies_in_a():
    rng = random.Random(6)
    for _ in range(30):
        e = random_element(rng, 3, 2, terms=6)
        zero = degree_components(e).get(0, AlgebraElement.zero(3))
        assert zero.in_a(2)


def test_frobenius_examples():
    for p in (2, 3, 5):
        assert fr(X(p, p)) == X(1, p)
        assert fr(X(1, p)).is_zero()
        assert fr(H(p, p)) == H(1, p)
        assert fr_prime(Y(1, p) * H(1, p) * X(1, p)) == AlgebraElement.monomial(p, p, p, p)
        assert fr_prime(AlgebraElement.one(p)) == AlgebraElement.one(p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fr_after_fr_prime_is_identity(p):
    rng = random.Random(p)
    for _ in range(100):
        e = random_element(rng, p, 2, terms=4)
        assert fr(fr_prime(e)) == e


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (5, 1)])
def test_fr_multiplicative(p, r):
    rng = random.Random(11)
    for _ in range(60):
        a, b = random_element(rng, p, r + 1), random_element(rng, p, r + 1)
        assert fr(a * b) == fr(a) * fr(b)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fr_prime_multiplicative_on_cartan_part(p):
    rng = random.Random(12)
    q = p * p
    for _ in range(60):
        a = AlgebraElement(p, {(0, rng.randrange(q), 0): rng.randrange(1, p) for _ in range(3)})
        b = AlgebraElement(p, {(0, rng.randrange(q), 0): rng.randrange(1, p) for _ in range(3)})
        assert fr_prime(a * b) == fr_prime(a) * fr_prime(b)


def test_fr_prime_not_multiplicative_in_general():
    p = 3
    assert fr_prime(X(1, p) * Y(1, p)) != fr_prime(X(1, p)) * fr_prime(Y(1, p))


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_associativity(p, r):
    rng = random.Random(p * 10 + r)
    for _ in range(40):
        a, b, c = (random_element(rng, p, r) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(elements(3, 2), elements(3, 2))
def test_closure_in_u_r(a, b):
    assert (a * b).in_u(2)


@settings(max_examples=40, deadline=None)
@given(elements(2, 2), elements(2, 2), elements(2, 2))
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p", [2, 3])
def test_closure_exhaustive_on_u1(p):
    # the out-of-range assertion never fires on products of basis elements of U_1
    mons = [AlgebraElement.monomial(p, *m) for m in basis_u(p, 1)]
    for a in mons:
        for b in mons:
            assert multiply(a, b).in_u(1)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1)])
def test_a_r_commutative_exhaustive(p, r):
    mons = [AlgebraElement.monomial(p, *m) for m in basis_a(p, r)]
    for a in mons:
        for b in mons:
            assert a * b == b * a
            assert (a * b).in_a(r)


def test_a_r_commutative_sampled():
    rng = random.Random(9)
    p, r = 5, 2
    q = p**r
    for _ in range(40):
        a = AlgebraElement(p, {(m, rng.randrange(q), m): 1 for m in rng.sample(range(q), 2)})
        b = AlgebraElement(p, {(m, rng.randrange(q), m): 1 for m in rng.sample(range(q), 2)})
        assert a * b == b * a


def test_operator_examples():
    op = operator_matrix(X(2, 3), 4)
    block = op.block(2)  # basis x^a y^(2-a), a = 0, 1, 2
    assert block[2, 0] == 1 and block[:, 0].sum() == 1
    h = operator_matrix(H(1, 3), 2).block(2)
    assert h[1, 1] == 0


def test_operator_preserves_degree_blocks():
    op = operator_matrix(Y(1, 5) * X(2, 5), 6)
    assert [b.shape[0] for b in op.blocks] == [d + 1 for d in range(7)]


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_oracle_generator_pairs(p, r):
    D = 2 * p**r
    gens = generators(p, r)
    for a in gens:
        for b in gens:
            assert operator_matrix(a * b, D, r) == operator_matrix(a, D, r) @ operator_matrix(b, D, r)


def test_oracle_multiplicative_on_plain_symmetric_powers():
    rng = random.Random(4)
    p, r = 3, 1
    for _ in range(50):
        a, b = random_element(rng, p, r), random_element(rng, p, r)
        assert operator_matrix(a * b, 6) == operator_matrix(a, 6) @ operator_matrix(b, 6)


def test_symmetric_powers_alone_are_not_faithful():
    from sl2hyper.linalg import rank

    p, r = 2, 1
    rows = np.array([operator_matrix(AlgebraElement.monomial(p, *m), 8).flat() for m in basis_u(p, r)])
    assert rank(rows, p) == 7
    kernel_element = Y(1, p) * H(1, p) * X(1, p) + Y(1, p) * X(1, p)
    assert not any(b.any() for b in operator_matrix(kernel_element, 8).blocks)
    assert any(b.any() for b in operator_matrix(kernel_element, 8, r).blocks)


def test_solve_in_span_examples():
    p = 2
    targets = [AlgebraElement.one(p), H(1, p)]
    assert solve_in_span(targets, mu(0, 1, p)) == [1, 1]
    assert solve_in_span(targets, AlgebraElement.zero(p)) == [0, 0]
    with pytest.raises(NotInSpan):
        solve_in_span([AlgebraElement.one(p)], X(1, p))
    with pytest.raises(DependentTargets):
        SpanSolver([H(1, 3), H(1, 3) * 2])


def test_binomial_table_is_thread_safe():
    # concurrent first use of a fresh prime must give consistent products
    p = 11
    want = {}
    errors = []

    def work(seed):
        rng = random.Random(seed)
        try:
            for _ in range(20):
                a, b = random_element(rng, p, 1), random_element(rng, p, 1)
                want[(seed, str(a), str(b))] = (a, b, a * b)
        except Exception as exc:
            errors.append(exc)

    threads = [threading.Thread(target=work, args=(s,)) for s in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    for a, b, prod in want.values():
        assert operator_matrix(prod, 6) == operator_matrix(a, 6) @ operator_matrix(b, 6)


def test_power_x_is_factorial_times_divided_power():
    p = 5
    assert power_x(3, p) == X(1, p) * X(1, p) * X(1, p)
    assert power_x(3, p) == X(3, p)  # 3! = 6 = 1 mod 5


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_a_r_generated_by_cartan_part_and_yx_powers(p, r):
    from sl2hyper.linalg import rank, row_space

    gens = [H(p**i, p) for i in range(r)] + [Y(p**i, p) * X(p**i, p) for i in range(r)]
    index = {m: i for i, m in enumerate(basis_a(p, r))}

    def vec(e):
        out = np.zeros(len(index), dtype=np.int64)
        for mono, c in e.terms.items():
            out[index[mono]] = c
        return out

    span = [AlgebraElement.one(p)]
    frontier = list(span)
    dim = 1
    while frontier:
        new = [g * e for g in gens for e in frontier]
        rows = np.array([vec(e) for e in span + new])
        basis = row_space(rows, p)
        if basis.shape[0] == dim:
            break
        dim = basis.shape[0]
        span = [AlgebraElement(p, {m: int(c) for m, c in zip(index, row)}) for row in basis]
        frontier = span
    assert rank(np.array([vec(e) for e in span]), p) == p ** (2 * r)
