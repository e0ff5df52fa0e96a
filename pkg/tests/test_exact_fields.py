from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfact.exact_fields import (CyclotomicField, ExtensionTower, FieldMismatch, RationalFunctionField,
                                  ZeroDivisorDetected, field_arith, multiplicative_order, primitive_root_pair,
                                  tower_extend, tower_invert)
from oracles import ModRoots

ORDERS = [2, 3, 4, 5, 6, 8, 9, 12]


def cyc(order):
    F = CyclotomicField(order)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=F.degree, max_size=F.degree).map(lambda cs: F(0) + sum(
        (c * F.root(k) for k, c in enumerate(cs)), F.zero()))


@pytest.mark.parametrize("n,m", [(4, 2), (2, 2), (9, 3), (6, 3), (12, 4), (8, 8)])
def test_primitive_root_pair_orders(n, m):
    zeta, q = primitive_root_pair(n, m)
    # exact powering oracle
    powers = [zeta ** k for k in range(1, n + 1)]
    assert [k + 1 for k, p in enumerate(powers) if p == 1] == [n]
    qpowers = [q ** k for k in range(1, m + 1)]
    assert [k + 1 for k, p in enumerate(qpowers) if p == 1] == [m]
    assert q == zeta ** (n // m)


def test_primitive_root_pair_examples():
    zeta, q = primitive_root_pair(4, 2)
    assert zeta * zeta == -1 and q == -1
    zeta, q = primitive_root_pair(2, 2)
    assert zeta == -1 and q == -1


def test_primitive_root_pair_rejects_non_divisor():
    with pytest.raises(ValueError):
        primitive_root_pair(6, 4)


def test_field_arith_examples():
    F = CyclotomicField(4)
    i = F.zeta
    assert field_arith("mul", 1 + i, 1 - i) == 2
    z3 = CyclotomicField(3).zeta
    assert field_arith("add", z3 * z3 + z3, 1) == 0
    for n in ORDERS:
        z = CyclotomicField(n).zeta
        assert field_arith("inv", z) == z ** (n - 1)


def test_inverse_of_zero_and_mixed_fields():
    F = CyclotomicField(5)
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()
    with pytest.raises(FieldMismatch):
        F.zeta + CyclotomicField(7).zeta


@pytest.mark.parametrize("order", ORDERS)
def test_modular_image_is_a_ring_map(order):
    R = ModRoots(order)
    F = CyclotomicField(order)
    a = F.zeta * 3 + Fraction(1, 2)
    b = F.root(order - 1) - 2
    assert R.of(a * b) == R.of(a) * R.of(b) % R.p
    assert R.of(a + b) == (R.of(a) + R.of(b)) % R.p
    assert R.of(a.inverse()) * R.of(a) % R.p == 1


@pytest.mark.parametrize("order", [3, 4, 5, 8, 12])
@given(data=st.data())
def test_field_axioms(order, data):
    a, b, c = (data.draw(cyc(order)) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if a:
        assert a * a.inverse() == 1
    # canonical form: equality iff the difference vanishes
    assert (a == b) == (not (a - b))


@pytest.mark.parametrize("order", [4, 5, 9])
@given(data=st.data())
def test_modular_oracle_agrees(order, data):
    R = ModRoots(order)
    a, b = data.draw(cyc(order)), data.draw(cyc(order))
    assert R.of(a * b) == R.of(a) * R.of(b) % R.p


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 10, 12])
def test_roots_have_exact_order(n):
    F = CyclotomicField(n)
    for k in range(n):
        from math import gcd
        assert multiplicative_order(F.root(k)) == n // gcd(k, n)


def test_rational_functions():
    K = RationalFunctionField(CyclotomicField(4), ["w"])
    w = K.gen("w")
    i = CyclotomicField(4).zeta
    f = (w * w - 1) / (w - 1)
    assert f == w + 1
    assert (w + K(i)) * (w + K(i)).inverse() == 1
    assert K(i) * K(i) == K(-1)


def _ore_tower():
    K = RationalFunctionField(CyclotomicField(4), ["w"])
    w = K.gen("w")
    t = tower_extend(ExtensionTower(K), "y", [-w, 0, 1])
    y = t.gen("y")
    t = tower_extend(t, "c1", [-(-y + 1), 0, 1])
    t = tower_extend(t, "c2", [-(y + 1), 0, 1])
    return K, t


def test_tower_degrees_and_independence():
    K, t = _ore_tower()
    assert t.degree == 8
    # independence oracle: powers of a primitive element span all 8 coordinates
    from hopfact.linalg import EchelonBasis
    theta = t.gen("y") + t.gen("c1") * 2 + t.gen("c2") * 3
    eb, p = EchelonBasis(), t.one()
    for _ in range(8):
        eb.add(dict(p.terms))
        p = p * theta
    assert len(eb) == 8


def test_tower_invert_examples():
    K = RationalFunctionField(CyclotomicField(4), ["w"])
    w = K.gen("w")
    t = tower_extend(ExtensionTower(K), "y", [-w, 0, 1])
    y = t.gen("y")
    assert tower_invert(t, y) == y * w.inverse()
    inv = tower_invert(t, y - 1)
    assert inv == (y + 1) * (w - 1).inverse()
    assert inv * (y - 1) == 1
    with pytest.raises(ZeroDivisionError):
        tower_invert(t, t.zero())


def test_reducible_tower_is_detected():
    K = RationalFunctionField(CyclotomicField(4), ["w"])
    t = tower_extend(ExtensionTower(K), "y", [-1, 0, 1])  # y^2 - 1 = (y - 1)(y + 1)
    with pytest.raises(ZeroDivisorDetected):
        tower_invert(t, t.gen("y") - 1)


def test_tower_extend_errors():
    K = RationalFunctionField(CyclotomicField(4), ["w"])
    t = tower_extend(ExtensionTower(K), "y", [-K.gen("w"), 0, 1])
    with pytest.raises(ValueError):
        tower_extend(t, "y", [1, 1])
    with pytest.raises(ValueError):
        tower_extend(t, "z", [1, 2])


@settings(max_examples=8)
@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_tower_inverse_property(coords):
    _, t = _ore_tower()
    a = t.element({e: t.base(c) for e, c in zip(t.basis(), coords) if c})
    if not a:
        return
    assert tower_invert(t, a) * a == 1
