import pytest

from hopfact.exact_fields import CyclotomicField
from hopfact.groups import BraidedVectorSpace, FinAbGroup
from hopfact.hopf import (NotFiniteDimensional, TaftSpec, bosonization_build, group_algebra, skew_primitive_spaces,
                          taft_build, verify_hopf_axioms)
from hopfact.linalg import vec_iadd
from hopfact.ncpoly import NcPolynomial, qbinomial
from spaces import a2, a2_relations, v2, v2_relations

TAFT = [(2, 2, 0), (4, 2, 0), (4, 2, 1), (6, 3, 0), (6, 3, 1), (9, 3, 0), (4, 4, 0), (8, 2, 1)]


def taft(n, m, alpha=0):
    return taft_build(TaftSpec(n, m, alpha))


def tensor(H, pairs):
    out = {}
    for a, b, c in pairs:
        for k, u in a.items():
            for l, v in b.items():
                vec_iadd(out, {(k, l): c * u * v})
    return out


@pytest.mark.parametrize("n,m,alpha", TAFT)
def test_taft_dimension_and_axioms(n, m, alpha):
    H = taft(n, m, alpha)
    assert H.dim == n * m
    report = verify_hopf_axioms(H)
    assert report.passed, [c.name for c in report.failed()]


@pytest.mark.parametrize("n,m,alpha", TAFT)
def test_taft_antipode_squared(n, m, alpha):
    H = taft(n, m, alpha)
    q = H.info["q"]
    x = H.basis_vec(1)
    assert H.S(H.S(x)) == {1: q.inverse()}


def test_sweedler_antipode_squared():
    H = taft(2, 2)
    assert H.S(H.S(H.basis_vec(1))) == {1: -1}


def test_taft_square_of_x_at_minus_one():
    for alpha in (0, 1):
        H = taft(4, 2, alpha)
        x, g = H.basis_vec(1), H.basis_vec(2)
        dx = H.delta(x)
        x2, g2 = H.mul(x, x), H.mul(g, g)
        want = tensor(H, [(x2, H.one(), 1), (g2, x2, 1)])
        assert H.tensor_mul(dx, dx) == want == H.delta(x2)


def test_taft_rejects_bad_parameters():
    with pytest.raises(ValueError):
        taft(6, 4)
    with pytest.raises(ValueError):
        taft_build(TaftSpec(4, 2, 0, zeta=CyclotomicField(4).root(2)))


def test_corrupted_qbinomial_breaks_coassociativity():
    def bad(k, j, q):
        return qbinomial(k, j, q) + (1 if (k, j) == (3, 1) else 0)
    H = taft_build(TaftSpec(4, 4, 0), qbinom=bad)
    report = verify_hopf_axioms(H)
    assert "coassociativity" in [c.name for c in report.failed()]


@pytest.mark.parametrize("n", [1, 2, 5, 6])
def test_group_algebra(n):
    H = group_algebra(FinAbGroup([n]))
    assert H.dim == n
    assert verify_hopf_axioms(H).passed
    assert all(not sp.nontrivial for sp in skew_primitive_spaces(H).values())


@pytest.mark.parametrize("n,m,beta_exp", [(4, 2, 1), (8, 4, 1), (6, 3, 1), (6, 2, 5)])
def test_rescaling_transports_structure(n, m, beta_exp):
    """x -> beta^-1 x with beta^m = alpha maps T(n,m,1) onto T(n,m,alpha)."""
    beta = CyclotomicField(n).root(beta_exp)
    alpha = beta ** m
    H1, Ha = taft(n, m, 1), taft(n, m, alpha)
    scale = [beta.inverse() ** (k % m) for k in range(H1.dim)]

    def phi(v):
        return {k: c * scale[k] for k, c in v.items()}

    def phi2(t):
        return {(a, b): c * scale[a] * scale[b] for (a, b), c in t.items()}

    for a in range(H1.dim):
        for b in range(H1.dim):
            assert phi(H1.mult[(a, b)]) == Ha.mul(phi({a: 1}), phi({b: 1}))
        assert phi2(H1.comult[a]) == Ha.delta(phi({a: 1}))
        assert phi(H1.antipode[a]) == Ha.S(phi({a: 1}))


def test_taft_skew_primitives():
    H = taft(4, 2)
    spaces = skew_primitive_spaces(H)
    g = 2  # g^1 x^0
    assert len(spaces[g].basis) == 2
    assert len(spaces[g].nontrivial) == 1
    (v,) = spaces[g].nontrivial
    assert set(v) == {1}
    assert all(not sp.nontrivial for h, sp in spaces.items() if h != g)


def test_bosonization_v2():
    V = v2()
    H = bosonization_build(V, v2_relations(V), 8)
    assert H.dim == 64
    assert verify_hopf_axioms(H).passed
    for sp in H.skew_primitives:
        (k,) = sp.element
        assert H.delta(sp.element) == {(k, H.unit): 1, (sp.g, k): 1}
    prim = skew_primitive_spaces(H)
    g = H.group_index[(1,)]
    assert len(prim[g].nontrivial) == 2
    assert all(not sp.nontrivial for h, sp in prim.items() if h != g)


def test_bosonization_a1_matches_taft():
    V = BraidedVectorSpace(FinAbGroup([3]), [("x", (1,), (1,))])
    x = NcPolynomial.gen(V, 0)
    H = bosonization_build(V, [x ** 3], 4)
    T = taft(3, 3)
    assert H.dim == T.dim == 9
    assert verify_hopf_axioms(H).passed
    # x g = q^-1 g x in both, with q = chi(g)
    (xb,) = [sp.element for sp in H.skew_primitives]
    gb = H.basis_vec(H.group_index[(1,)])
    lhs, rhs = H.mul(xb, gb), H.mul(gb, xb)
    ((k, c),) = lhs.items()
    assert rhs == {k: c * V.q(0, 0)}


def test_bosonization_trivial_space():
    V = BraidedVectorSpace(FinAbGroup([2]), [])
    H = bosonization_build(V, [], 2)
    assert H.dim == 2
    assert verify_hopf_axioms(H).passed


def test_bosonization_infinite_dimensional():
    V = v2()
    with pytest.raises(NotFiniteDimensional) as info:
        bosonization_build(V, v2_relations(V)[:2], 6)
    assert info.value.witness_degree == 6


def test_bosonization_a2_generator_reduced_check():
    V = a2()
    H = bosonization_build(V, a2_relations(V), 9)
    assert H.dim == 243
    assert verify_hopf_axioms(H).passed
