"""Inner forms of skew derivations on finite-dimensional G-graded algebras.

A (g,1)-skew derivation f satisfies f(ab) = f(a) b + (g.a) f(b).  It is inner
when f(a) = c a - (g.a) c for some c; solving for c is a linear system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..exact_fields import CyclotomicField
from ..groups import Elem, FinAbGroup, char_exponent
from ..linalg import EchelonBasis, kernel_of_images, solve_sparse, vec_iadd
from ..quotient import RewriteSystem

Vec = Dict


class NotASkewDerivation(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoSolution(ValueError):
    pass


class FiniteGradedAlgebra:
    """A finite-dimensional algebra given by a confluent rewrite system, graded by G^ via generator weights."""

    def __init__(self, rs: RewriteSystem, group: FinAbGroup, field_: CyclotomicField,
                 generator_weights: Sequence[Elem], max_degree: int = 32):
        self.rs = rs
        self.group = group
        self.field = field_
        self.generator_weights = [group.elem(w) for w in generator_weights]
        basis: List = []
        for d in range(max_degree + 1):
            words = rs.normal_words(d)
            if not words:
                break
            basis.extend(words)
        else:
            raise ValueError(f"no finite basis found below degree {max_degree}")
        self._basis = basis
        self.scalars = rs.scalars
        self.one_coeff = rs.one_coeff

    def basis(self) -> List:
        return list(self._basis)

    @property
    def dim(self) -> int:
        return len(self._basis)

    def weight(self, key) -> Elem:
        return self.group.sum(self.generator_weights[i] for i in key)

    def component(self, sigma: Elem) -> List:
        sigma = self.group.elem(sigma)
        return [k for k in self._basis if self.weight(k) == sigma]

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.rs.mul(x, y)

    def one(self) -> Vec:
        return self.rs.one()

    def unit(self, key) -> Vec:
        return {key: self.one_coeff}

    def g_act(self, g: Elem, a: Vec) -> Vec:
        G = self.group
        N = self.field.order
        out = {}
        for k, c in a.items():
            e = char_exponent(self.weight(k), g, G) * (N // G.exponent)
            out[k] = c * self.field.root(e)
        return out

    def fmt(self, x: Vec) -> str:
        return self.rs.fmt(x)


@dataclass
class InnerForm:
    c: Vec
    ambiguity: List[Vec]
    checked: int


def apply_linear(f: Dict, a: Vec) -> Vec:
    """Extend f (given on basis keys) linearly."""
    out: Vec = {}
    for k, c in a.items():
        vec_iadd(out, f.get(k, {}), c)
    return out


def skew_derivation_defect(A: FiniteGradedAlgebra, f: Dict, g: Elem) -> Optional[Tuple]:
    """First basis pair (a, b) with f(ab) != f(a) b + (g.a) f(b), else None."""
    one = A.one_coeff
    for a in A.basis():
        av = A.unit(a)
        fa = f.get(a, {})
        ga = A.g_act(g, av)
        for b in A.basis():
            bv = A.unit(b)
            lhs = apply_linear(f, A.mul(av, bv))
            rhs = A.mul(fa, bv)
            vec_iadd(rhs, A.mul(ga, f.get(b, {})))
            vec_iadd(lhs, rhs, -one)
            if lhs:
                return a, b
    return None


def commutator_operator(A: FiniteGradedAlgebra, c: Vec, g: Elem) -> Dict:
    """a -> c a - (g.a) c on every basis key."""
    one = A.one_coeff
    out = {}
    for k in A.basis():
        kv = A.unit(k)
        v = A.mul(c, kv)
        vec_iadd(v, A.mul(A.g_act(g, kv), c), -one)
        out[k] = v
    return out


def solve_inner_form(A: FiniteGradedAlgebra, f: Dict, g: Elem, sigma: Elem) -> InnerForm:
    """c of weight sigma with f = c(-) - (g.-)c, plus a basis of {z of weight sigma : [z, -]_sk = 0}."""
    g = A.group.elem(g)
    bad = skew_derivation_defect(A, f, g)
    if bad is not None:
        a, b = bad
        raise NotASkewDerivation(f"Leibniz rule fails on ({A.rs.fmt_word(a)}, {A.rs.fmt_word(b)})",
                                 witness={"a": A.rs.fmt_word(a), "b": A.rs.fmt_word(b)})
    comp = A.component(sigma)
    basis = A.basis()

    def flatten(op: Dict) -> Vec:
        return {(a, k): c for a in basis for k, c in op.get(a, {}).items()}

    columns = [flatten(commutator_operator(A, A.unit(k), g)) for k in comp]
    target = flatten(f)
    sol = solve_sparse(columns, target)
    if sol is None:
        raise NoSolution(f"no inner element of weight {tuple(sigma)} reproduces the operator")
    c = {comp[i]: v for i, v in sol.items() if v}
    ker = kernel_of_images(columns, one=A.one_coeff)
    amb = []
    eb = EchelonBasis()
    for v in ker:
        z = {comp[i]: x for i, x in v.items() if x}
        if z and eb.add(z):
            amb.append(z)
    # re-check the recovered operator on the whole basis
    rec = commutator_operator(A, c, g)
    for a in basis:
        diff = dict(rec[a])
        vec_iadd(diff, f.get(a, {}), -A.one_coeff)
        if diff:
            raise NoSolution(f"solution fails to reproduce the operator on {A.rs.fmt_word(a)}")
    return InnerForm(c, amb, len(basis))


def q22_specialization() -> Tuple[FiniteGradedAlgebra, Dict, Elem, Elem]:
    """The algebra c^2 = 1, w^2 = 1, cw = -wc with the x-operator of T(2,2,0): x.a = ca - (g.a)c.

    g acts by -1 on c and w, so both have weight (1) in Z/2.
    """
    F = CyclotomicField(2)
    one = F.one()
    rs = RewriteSystem(["c", "w"], {(0, 0): {(): one}, (1, 1): {(): one}, (1, 0): {(0, 1): -one}}, F)
    G = FinAbGroup([2])
    A = FiniteGradedAlgebra(rs, G, F, [(1,), (1,)])
    g = (1,)
    f = commutator_operator(A, {(0,): one}, g)
    return A, f, g, (1,)


def corrupt(A: FiniteGradedAlgebra, f: Dict) -> Dict:
    """f + id, which violates the Leibniz rule."""
    out = {}
    for k in A.basis():
        v = dict(f.get(k, {}))
        vec_iadd(v, A.unit(k))
        out[k] = v
    return out
