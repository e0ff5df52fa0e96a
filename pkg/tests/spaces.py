"""Braided vector spaces shared by the tests."""

from hopfact.groups import BraidedVectorSpace, FinAbGroup
from hopfact.ncpoly import NcPolynomial, ad_sk, root_vector


def v2():
    return BraidedVectorSpace(FinAbGroup([4]), [("x1", (1,), (2,)), ("x2", (1,), (1,))])


def v2_relations(V):
    x1, x2 = NcPolynomial.gen(V, 0), NcPolynomial.gen(V, 1)
    return [x1 ** 2, x2 ** 4, ad_sk(x2, 2)(x1)]


def a2(orders=(3, 3), pad=0):
    z = (0,) * pad
    return BraidedVectorSpace(FinAbGroup(list(orders)),
                              [("x1", (1, 0) + z, (1, 2) + z), ("x2", (0, 1) + z, (0, 1) + z)])


def a2_relations(V):
    x1, x2 = NcPolynomial.gen(V, 0), NcPolynomial.gen(V, 1)
    return [ad_sk(x1, 2)(x2), ad_sk(x2, 2)(x1), x1 ** 3, root_vector(V, (0, 1)) ** 3, x2 ** 3]


def qplane(n=4, s=1):
    """Two generators with q_12 q_21 = 1 in Z/n."""
    return BraidedVectorSpace(FinAbGroup([n]), [("c", (1,), (s,)), ("w", (0,), (1,))])
