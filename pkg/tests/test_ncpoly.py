import pytest
from hypothesis import given, strategies as st

from hopfact.exact_fields import CyclotomicField
from hopfact.groups import CartanData
from hopfact.ncpoly import (AmbientMismatch, NcPolynomial, NotHomogeneous, ad_sk, braided_adjoint, braided_antipode,
                            braided_coproduct, braided_counit, coideal_check, coideal_verdicts, is_primitive, middle_terms, qbinomial,
                            qserre_element, skew_commutator, skew_power_expand, tensor_braided_product)
from oracles import ModRoots, qbinomial_product, skew_power_mod
from spaces import a2, a2_relations, v2, v2_relations

I = CyclotomicField(4).zeta
SPACES = {"v2": v2(), "a2": a2()}


def polys(V, max_len=3):
    word = st.lists(st.integers(0, V.dim - 1), max_size=max_len).map(tuple)
    return st.dictionaries(word, st.integers(-3, 3), max_size=4).map(lambda d: NcPolynomial(V, d))


def homogeneous(V, max_len=3):
    """Words of one multidegree: permutations of a fixed multiset."""
    @st.composite
    def build(draw):
        base = draw(st.lists(st.integers(0, V.dim - 1), min_size=1, max_size=max_len))
        perms = draw(st.lists(st.permutations(base), min_size=1, max_size=3))
        coeffs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(perms), max_size=len(perms)))
        return NcPolynomial(V, {tuple(p): c for p, c in zip(perms, coeffs)})
    return build()


def apply_mult_s_id(V, delta):
    out = NcPolynomial.zero(V)
    for (l, r), c in delta.items():
        out = out + braided_antipode(NcPolynomial(V, {l: c})) * NcPolynomial.word(V, r)
    return out


@pytest.mark.parametrize("name", sorted(SPACES))
@given(data=st.data())
def test_coproduct_is_braided_multiplicative(name, data):
    V = SPACES[name]
    a, b = data.draw(polys(V)), data.draw(polys(V))
    assert braided_coproduct(a * b) == tensor_braided_product(V, braided_coproduct(a), braided_coproduct(b))


@pytest.mark.parametrize("name", sorted(SPACES))
@given(data=st.data())
def test_antipode_convolution_inverse(name, data):
    V = SPACES[name]
    a = data.draw(polys(V))
    assert apply_mult_s_id(V, braided_coproduct(a)) == NcPolynomial.one(V) * braided_counit(a)


@pytest.mark.parametrize("name", sorted(SPACES))
@given(data=st.data())
def test_adjoint_of_generator_is_skew_commutator(name, data):
    V = SPACES[name]
    b = data.draw(homogeneous(V))
    for i in range(V.dim):
        x = NcPolynomial.gen(V, i)
        assert braided_adjoint(x, b) == skew_commutator(x, b)


@given(data=st.data())
def test_adjoint_is_an_action(data):
    V = SPACES["v2"]
    a, b = data.draw(homogeneous(V, 2)), data.draw(homogeneous(V, 2))
    c = data.draw(homogeneous(V, 2))
    assert braided_adjoint(a * b, c) == braided_adjoint(a, braided_adjoint(b, c))


def test_unit_and_zero():
    V = v2()
    x = NcPolynomial.gen(V, 0)
    assert x * NcPolynomial.one(V) == x
    assert not (x - x)
    assert braided_counit(x + 2) == 2


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        NcPolynomial.gen(v2(), 0) * NcPolynomial.gen(v2(), 0)


def test_inhomogeneous_commutator_rejected():
    V = v2()
    x1, x2 = NcPolynomial.gen(V, 0), NcPolynomial.gen(V, 1)
    with pytest.raises(NotHomogeneous):
        skew_commutator(x1 + x1 * x1, x2)


def test_v2_square_of_x1_primitive():
    V = v2()
    x1 = NcPolynomial.gen(V, 0)
    assert is_primitive(x1 * x1)


def test_v2_square_of_x2_middle_coefficient():
    V = v2()
    x2 = NcPolynomial.gen(V, 1)
    assert middle_terms(braided_coproduct(x2 * x2)) == {((1,), (1,)): 1 + I}


def test_v2_relations_primitive():
    V = v2()
    for r in v2_relations(V):
        assert is_primitive(r)


def test_qserre_matches_adjoint_power():
    V = a2()
    C = CartanData([[2, -1], [-1, 2]])
    x1, x2 = NcPolynomial.gen(V, 0), NcPolynomial.gen(V, 1)
    assert qserre_element(V, C, 0, 1) == ad_sk(x1, 2)(x2)
    assert is_primitive(qserre_element(V, C, 1, 0))
    with pytest.raises(ValueError):
        qserre_element(V, C, 0, 0)


def test_coideal_check_v2():
    V = v2()
    assert coideal_verdicts(v2_relations(V), 4) == {0: True, 1: True, 2: True}
    assert coideal_check(v2_relations(V), 4)
    assert coideal_check([], 3)
    with pytest.raises(ValueError):
        coideal_check(v2_relations(V), 3)


def test_coideal_check_a2_root_power():
    # x_12^3 has middle terms x1^3 (x) x2^3 plus terms only in the two-sided ideal
    V = a2()
    assert coideal_verdicts(a2_relations(V), 6) == {0: True, 1: True, 2: True, 3: False, 4: True}


def test_coideal_check_flags_non_coideal():
    V = v2()
    x2 = NcPolynomial.gen(V, 1)
    assert coideal_verdicts([x2 * x2], 2) == {0: False}
    assert not coideal_check([x2 * x2], 2)


@given(st.integers(0, 20), st.data(), st.sampled_from([3, 4, 5, 6, 8, 12]))
def test_qbinomial_matches_product_formula(k, data, N):
    j = data.draw(st.integers(0, k))
    e = data.draw(st.integers(0, N - 1))
    R = ModRoots(N)
    got = qbinomial(k, j, CyclotomicField(N).root(e))
    assert R.of(got) == qbinomial_product(k, j, e, R)


@given(st.integers(1, 15), st.data())
def test_q_pascal(k, data):
    j = data.draw(st.integers(1, k))
    q = CyclotomicField(12).root(data.draw(st.integers(0, 11)))
    lower = qbinomial(k - 1, j, q) if j < k else 0
    assert qbinomial(k, j, q) == qbinomial(k - 1, j - 1, q) + q ** j * lower


def test_qbinomial_vanishes_at_order():
    q = CyclotomicField(6).root(2)
    assert all(not qbinomial(3, j, q) for j in (1, 2))
    assert qbinomial(3, 3, q) == 1


@pytest.mark.parametrize("n,m", [(2, 2), (4, 2), (6, 3), (8, 4), (9, 3), (6, 6)])
def test_skew_power_expand_matches_oracle(n, m):
    F = CyclotomicField(n)
    R = ModRoots(n)
    s = n // m
    for k0 in (1, n - 1):
        zeta = F.root(k0)
        for r in range(n):
            got = skew_power_expand(m, r, zeta)
            want = skew_power_mod(m, k0 * s, k0 * r, R)
            assert [R.of(x) for x in got] == want
