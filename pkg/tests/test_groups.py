from itertools import product

import pytest
from hypothesis import given, strategies as st

from hopfact.exact_fields import CyclotomicField, multiplicative_order
from hopfact.groups import (BraidedVectorSpace, CartanData, FinAbGroup, braiding_matrix, cartan_compatible,
                            cartan_violations, char_eval, generates_dual)
from oracles import group_size, subgroup_size
from spaces import a2, v2

F4 = CyclotomicField(4)
I = F4.zeta


def test_char_eval_examples():
    G = FinAbGroup([4])
    assert char_eval((0,), (3,), G) == 1
    assert char_eval((1,), (1,), G) == I
    assert char_eval((1,), (2,), G) == -1


def test_braiding_matrix_v2():
    assert braiding_matrix(v2()) == [[-1, I], [-1, I]]


def test_braiding_matrix_a2():
    V = a2()
    q = V.field.zeta
    assert V.field.order == 3
    assert braiding_matrix(V) == [[q, 1], [q.inverse(), q]]


def test_braiding_single_generator():
    V = BraidedVectorSpace(FinAbGroup([5]), [("x", (1,), (2,))])
    assert braiding_matrix(V) == [[V.field.root(2)]]


@pytest.mark.parametrize("orders", [[4], [2, 2], [3, 3], [2, 4]])
def test_char_eval_bilinear(orders):
    G = FinAbGroup(orders)
    for chi, psi, g, h in product(G.elements(), repeat=4):
        if (chi, psi) > ((1,) * G.rank, (1,) * G.rank):
            continue
        assert char_eval(chi, G.add(g, h), G) == char_eval(chi, g, G) * char_eval(chi, h, G)
        assert char_eval(G.add(chi, psi), g, G) == char_eval(chi, g, G) * char_eval(psi, g, G)


def test_braiding_orders_divide_exponent():
    for V in (v2(), a2(), a2((3, 3, 3), 1)):
        for row in braiding_matrix(V):
            for x in row:
                assert V.group.exponent % multiplicative_order(x) == 0


def test_generates_dual_examples():
    assert generates_dual([(1,)], FinAbGroup([4]))
    assert not generates_dual([(2,)], FinAbGroup([4]))
    assert generates_dual([(1, 2), (0, 1)], FinAbGroup([3, 3]))


ORDER_SETS = [[4], [2, 2], [3, 3], [2, 6], [9], [3, 3, 3], [2, 2, 2, 2]]


@given(st.sampled_from(ORDER_SETS), st.data())
def test_generates_dual_matches_enumeration(orders, data):
    G = FinAbGroup(orders)
    k = data.draw(st.integers(0, 3))
    gens = [tuple(data.draw(st.integers(0, n - 1)) for n in orders) for _ in range(k)]
    assert generates_dual(gens, G) == (subgroup_size(gens, orders) == group_size(orders))


def test_cartan_compatible_examples():
    A1 = BraidedVectorSpace(FinAbGroup([3]), [("x", (1,), (1,))])
    assert cartan_compatible(A1, CartanData([[2]]))
    assert cartan_compatible(a2(), CartanData([[2, -1], [-1, 2]]))
    V = v2()
    assert not cartan_compatible(V, CartanData([[2, -1], [-1, 2]]), order_restrictions=False)
    bad = cartan_violations(V, CartanData([[2, -1], [-1, 2]]), order_restrictions=False)
    assert any("q_ij q_ji = q_ii^a_ij" in msg for msg in bad)


def test_order_restrictions_are_optional():
    V = BraidedVectorSpace(FinAbGroup([4]), [("x", (1,), (1,))])
    assert not cartan_compatible(V, CartanData([[2]]))
    assert cartan_compatible(V, CartanData([[2]]), order_restrictions=False)
