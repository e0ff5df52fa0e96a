from math import gcd

import pytest
from hypothesis import given, strategies as st

from hopfact.exact_fields import CyclotomicField
from hopfact.groups import FinAbGroup
from hopfact.lab.inner import (FiniteGradedAlgebra, NoSolution, NotASkewDerivation, commutator_operator, corrupt,
                               q22_specialization, skew_derivation_defect, solve_inner_form)
from hopfact.lab.omega import (all_zetas, omega_recursion, omega_subset_sum, omega_table, skew_power_certificate,
                               two_term_coefficients)
from hopfact.ncpoly import skew_power_expand
from hopfact.quotient import RewriteSystem
from oracles import ModRoots, coprime_count, omega_subsets_mod

CASES = [(m * s, m) for m in range(1, 7) for s in range(1, 4)]


@pytest.mark.parametrize("n,m", CASES)
def test_omega_formulas_agree_with_oracle(n, m):
    F = CyclotomicField(n)
    R = ModRoots(n)
    zetas = all_zetas(n)
    assert len(zetas) == coprime_count(n)
    for k in (k for k in range(1, n + 1) if gcd(k, n) == 1):
        q = F.root(k * (n // m))
        table = omega_table(m, q)
        assert table.consistent
        assert [R.of(w) for w in table.values] == omega_subsets_mod(m, k * (n // m), R)
        assert table.interior_vanishes()
        assert table.values[m] == table.top_value()


@pytest.mark.parametrize("n,m", [(4, 2), (6, 3), (8, 4), (6, 2), (5, 5)])
def test_skew_power_certificate(n, m):
    for z in all_zetas(n):
        rep = skew_power_certificate(n, m, z)
        assert rep.passed, [c.id for c in rep.failed()]


def test_skew_power_expand_hand_examples():
    i = CyclotomicField(4).zeta
    assert skew_power_expand(2, 1, i) == [1, 0, 1]
    assert skew_power_expand(1, 1, i) == [1, -i]
    assert two_term_coefficients(2, 1, i, i ** 2) == [1, 0, 1]


def test_omega_non_root_of_unity_order():
    # q of order 3 but only m = 2 factors: interior no longer vanishes
    q = CyclotomicField(3).zeta
    assert omega_subset_sum(2, q) == omega_recursion(2, q)
    assert omega_subset_sum(2, q)[1] == 1 + q


def test_certificate_rejects_bad_parameters():
    with pytest.raises(ValueError):
        skew_power_certificate(6, 4)
    with pytest.raises(ValueError):
        skew_power_certificate(4, 2, CyclotomicField(4).root(2))


def test_q22_solver_recovers_inner_element():
    A, f, g, sigma = q22_specialization()
    assert [A.rs.fmt_word(k) for k in A.basis()] == ["1", "c", "w", "c*w"]
    sol = solve_inner_form(A, f, g, sigma)
    assert sol.c == {(0,): A.one_coeff}
    assert sol.ambiguity == []
    assert sol.checked == 4


def test_q22_corrupted_operator_rejected():
    A, f, g, sigma = q22_specialization()
    bad = corrupt(A, f)
    assert skew_derivation_defect(A, bad, g) == ((), ())
    with pytest.raises(NotASkewDerivation) as info:
        solve_inner_form(A, bad, g, sigma)
    assert info.value.witness == {"a": "1", "b": "1"}


def test_q22_zero_operator():
    A, _, g, sigma = q22_specialization()
    assert solve_inner_form(A, {}, g, sigma).c == {}


def test_q22_wrong_weight_has_no_solution():
    A, f, g, _ = q22_specialization()
    with pytest.raises(NoSolution):
        solve_inner_form(A, f, g, (0,))


def truncated_polynomial(N):
    """k[c]/(c^N) over Q(zeta_N), c of weight 1 in Z/N."""
    F = CyclotomicField(N)
    rs = RewriteSystem(["c"], {(0,) * N: {}}, F)
    return FiniteGradedAlgebra(rs, FinAbGroup([N]), F, [(1,)])


@given(st.integers(2, 5), st.data())
def test_solver_round_trip(N, data):
    A = truncated_polynomial(N)
    g = (data.draw(st.integers(0, N - 1)),)
    sigma = (data.draw(st.integers(0, N - 1)),)
    comp = A.component(sigma)
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(comp), max_size=len(comp)))
    c = {k: A.field(x) for k, x in zip(comp, coeffs) if x}
    f = commutator_operator(A, c, g)
    sol = solve_inner_form(A, f, g, sigma)
    rec = commutator_operator(A, sol.c, g)
    assert all(rec[k] == f[k] for k in A.basis())
    for z in sol.ambiguity:
        assert all(not v for v in commutator_operator(A, z, g).values())
