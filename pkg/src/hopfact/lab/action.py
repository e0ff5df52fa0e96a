"""Module-algebra actions of pointed Hopf algebras through inner skew derivations.

Every action here has the same shape: the group G of grouplikes acts
diagonally, each basis key of the target carrying a character (its
weight), and each skew primitive x_i acts as the skew commutator
x_i . a = c_i a - (g_i . a) c_i with a fixed inner element c_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..exact_fields import CyclotomicField, CycNumber
from ..groups import (BraidedVectorSpace, CartanData, Elem, FinAbGroup, cartan_violations, char_exponent,
                      component_orders, default_root_words)
from ..hopf import HopfData, TaftSpec, bosonization_build, taft_build
from ..linalg import vec_iadd
from ..ncpoly import NcPolynomial, braided_adjoint, qserre_element, root_vector
from ..quotient import Presentation, RewriteSystem, TruncatedAlgebra, skew_polynomial_system
from .models import OreTower, build_ore_tower

Vec = Dict


class CartanIncompatible(ValueError):
    pass


@dataclass
class InnerElement:
    name: str
    element: Vec
    g: Elem
    chi: Elem


@dataclass
class OperatorRelation:
    """A relation of H as an operator on the target; ``apply(a)`` must vanish for the relation to hold."""
    name: str
    apply: Callable[[Vec], Vec]


class ModuleAlgebraAction:
    """H acting on ``target`` with diagonal G-action and inner skew primitives.

    ``hopf_words[k]`` spells basis element k of H as a product of generator
    tokens ``("g", elem)`` / ``("x", i)``, read left to right.
    """

    def __init__(self, hopf: HopfData, target, group: FinAbGroup, field_: CyclotomicField,
                 weight: Callable, inner: Sequence[InnerElement], hopf_words: Dict[int, List[Tuple]],
                 relations: Sequence[OperatorRelation] = (), name: str = "action",
                 generator_keys: Sequence = (), info: Optional[dict] = None):
        self.hopf = hopf
        self.target = target
        self.group = group
        self.field = field_
        self.weight = weight
        self.inner = list(inner)
        self.hopf_words = hopf_words
        self.relations = list(relations)
        self.name = name
        self.generator_keys = list(generator_keys)
        self.info = dict(info or {})
        self._root_cache: Dict[Tuple, object] = {}

    # -- grouplikes -----------------------------------------------------------
    def char_scalar(self, chi: Elem, g: Elem):
        key = (chi, g)
        hit = self._root_cache.get(key)
        if hit is None:
            e = char_exponent(chi, g, self.group) * (self.field.order // self.group.exponent)
            hit = self.target.scalars(self.field.root(e))
            self._root_cache[key] = hit
        return hit

    def g_act(self, g: Elem, a: Vec) -> Vec:
        return {k: c * self.char_scalar(self.weight(k), g) for k, c in a.items()}

    # -- skew primitives ------------------------------------------------------
    def x_act(self, i: int, a: Vec) -> Vec:
        inner = self.inner[i]
        out = self.target.mul(inner.element, a)
        vec_iadd(out, self.target.mul(self.g_act(inner.g, a), inner.element), -self.target.scalars(1))
        return out

    def act_token(self, token: Tuple, a: Vec) -> Vec:
        kind, val = token
        return self.g_act(val, a) if kind == "g" else self.x_act(val, a)

    def act_basis(self, h: int, a: Vec) -> Vec:
        for token in reversed(self.hopf_words[h]):
            a = self.act_token(token, a)
            if not a:
                break
        return a

    def act(self, hvec: Dict[int, object], a: Vec) -> Vec:
        out: Vec = {}
        for h, c in hvec.items():
            vec_iadd(out, self.act_basis(h, a), self.target.scalars(c))
        return out

    def x_word(self, word: Sequence[int], a: Vec) -> Vec:
        """x_{w1} x_{w2} ... x_{wk} . a"""
        for i in reversed(word):
            a = self.x_act(i, a)
            if not a:
                break
        return a

    def x_poly(self, r: NcPolynomial, a: Vec) -> Vec:
        out: Vec = {}
        for w, c in r.terms.items():
            vec_iadd(out, self.x_word(w, a), self.target.scalars(c))
        return out

    def basis_upto(self, D: int) -> List:
        return [k for d in range(D + 1) for k in self.target.basis(d)]

    def fmt(self, a: Vec) -> str:
        return self.target.fmt(a)


def _unit_vec(target, key) -> Vec:
    return {key: target.scalars(1)}


# --------------------------------------------------------------------------
# Taft algebras on the quantum plane and on the Ore model
# --------------------------------------------------------------------------

def _taft_words(H: HopfData, n: int, m: int) -> Dict[int, List[Tuple]]:
    return {i * m + j: ([("g", (i,))] if i else []) + [("x", 0)] * j for i in range(n) for j in range(m)}


def _taft_relations(act_ref: List, n: int, m: int, alpha, q, group: FinAbGroup) -> List[OperatorRelation]:
    g = (1,)

    def pow_x(a):
        act = act_ref[0]
        return act.x_word([0] * m, a)

    def rel_xm(a):
        act = act_ref[0]
        out = pow_x(a)
        if alpha:
            sc = act.target.scalars(alpha)
            vec_iadd(out, a, -sc)
            vec_iadd(out, act.g_act(group.mul(g, m), a), sc)
        return out

    def rel_gn(a):
        act = act_ref[0]
        out = act.g_act(group.mul(g, n), a)
        vec_iadd(out, a, -act.target.scalars(1))
        return out

    def rel_gx(a):
        act = act_ref[0]
        out = act.g_act(g, act.x_act(0, act.g_act(group.neg(g), a)))
        vec_iadd(out, act.x_act(0, a), -act.target.scalars(q))
        return out

    return [OperatorRelation("x^m - alpha(1 - g^m)", rel_xm),
            OperatorRelation("g^n - 1", rel_gn),
            OperatorRelation("g x g^-1 - q x", rel_gx)]


def quantum_plane(n: int, zeta: CycNumber) -> RewriteSystem:
    """k<c, w>/(c w - zeta w c), normal words c^i w^j."""
    F = zeta.field
    return RewriteSystem(["c", "w"], {(1, 0): {(0, 1): F.one() / zeta}}, F)


def build_taft_qplane_action(n: int, m: int, zeta: Optional[CycNumber] = None,
                             inner: Optional[Vec] = None) -> ModuleAlgebraAction:
    """T(n,m,0) on the quantum plane: g.c = qc, g.w = zeta w, x = [c, -]_sk.

    ``inner`` replaces the inner element (used for corrupted-action controls).
    """
    spec = TaftSpec(n, m, 0, zeta=zeta)
    zeta, q = spec.resolve()
    spec.zeta = zeta
    H = taft_build(spec)
    s = n // m
    A = quantum_plane(n, zeta)
    G = FinAbGroup([n])
    weight = lambda w: ((s * sum(1 for i in w if i == 0) + sum(1 for i in w if i == 1)) % n,)
    c = inner if inner is not None else {(0,): A.one_coeff}
    ref: List = []
    act = ModuleAlgebraAction(H, A, G, zeta.field, weight, [InnerElement("c", c, (1,), (s % n,))],
                              _taft_words(H, n, m), _taft_relations(ref, n, m, 0, q, G),
                              name=f"taft0({n},{m})", generator_keys=[(0,), (1,)],
                              info={"n": n, "m": m, "s": s, "zeta": zeta, "q": q})
    ref.append(act)
    return act


def build_ore_tower_action(n: int, m: int, zeta: Optional[CycNumber] = None,
                           model: Optional[OreTower] = None) -> ModuleAlgebraAction:
    """T(n,m,1) on L[t; sigma] with g(c_i) = q c_i, g(t) = zeta t and inner element c = c_1."""
    O = model or build_ore_tower(n, m, zeta)
    spec = TaftSpec(n, m, 1, zeta=O.zeta)
    H = taft_build(spec)
    A = O.ore
    G = FinAbGroup([n])
    c_levels = [k for k in range(len(O.tower.levels)) if O.c_level(k)]

    def weight(key):
        r, e = key
        return ((r + O.s * sum(e[k] for k in c_levels)) % n,)

    c = A.element(O.c(1))
    ref: List = []
    gen_keys = [(1, (0,) * len(O.tower.levels))] + [(0, tuple(1 if k == lv else 0 for k in range(len(O.tower.levels))))
                                                    for lv in range(len(O.tower.levels))]
    act = ModuleAlgebraAction(H, A, G, O.zeta.field, weight, [InnerElement("c1", c, (1,), (O.s % n,))],
                              _taft_words(H, n, m), _taft_relations(ref, n, m, 1, O.q, G),
                              name=f"taft1({n},{m})", generator_keys=gen_keys,
                              info={"n": n, "m": m, "s": O.s, "zeta": O.zeta, "q": O.q, "model": O})
    ref.append(act)
    return act


# --------------------------------------------------------------------------
# Bosonizations acting by skew commutators
# --------------------------------------------------------------------------

def cartan_nichols_relations(V: BraidedVectorSpace, C: CartanData) -> List[NcPolynomial]:
    """q-Serre relations plus x_gamma^N for the positive roots of each component."""
    rels = []
    theta = V.dim
    for i in range(theta):
        for j in range(theta):
            if i != j:
                r = qserre_element(V, C, i, j)
                if r:
                    rels.append(r)
    orders = component_orders(V, C)
    for word in (C.root_words or default_root_words(C.matrix)):
        comp = next(k for k, comp in enumerate(C.components()) if word[0] in comp)
        N = orders[comp]
        rels.append(root_vector(V, word) ** N)
    return rels


def _bosonization_words(H: HopfData, V: BraidedVectorSpace) -> Dict[int, List[Tuple]]:
    T = H.info["nichols"]
    words = T.all_basis()
    elems = V.group.elements()
    out = {}
    for gi, g in enumerate(elems):
        for wi, w in enumerate(words):
            out[gi * len(words) + wi] = ([("g", g)] if any(g) else []) + [("x", i) for i in w]
    return out


def _bosonization_relations(ref: List, V: BraidedVectorSpace, relations: Sequence[NcPolynomial]
                            ) -> List[OperatorRelation]:
    G = V.group
    out = []
    for r in relations:
        out.append(OperatorRelation(f"{r}", lambda a, r=r: ref[0].x_poly(r, a)))
    for s in range(G.rank):
        e = G.elem([1 if t == s else 0 for t in range(G.rank)])
        for i, gen in enumerate(V.generators):
            def rel(a, e=e, i=i, chi=gen.chi):
                act = ref[0]
                out_ = act.g_act(e, act.x_act(i, act.g_act(G.neg(e), a)))
                vec_iadd(out_, act.x_act(i, a), -act.char_scalar(chi, e))
                return out_
            out.append(OperatorRelation(f"g{s} x{i + 1} g{s}^-1 - chi{i + 1}(g{s}) x{i + 1}", rel))

        def rel_order(a, e=e, k=G.orders[s]):
            act = ref[0]
            out_ = act.g_act(G.mul(e, k), a)
            vec_iadd(out_, a, -act.target.scalars(1))
            return out_
        out.append(OperatorRelation(f"g{s}^{G.orders[s]} - 1", rel_order))
    return out


def nichols_top_cutoff(V: BraidedVectorSpace, relations: Sequence[NcPolynomial], limit: int = 64) -> TruncatedAlgebra:
    """Truncate with increasing cutoff until a vanishing degree appears."""
    p = Presentation.from_braided(V, relations)
    D = max(p.max_relation_degree(), 2)
    while True:
        T = p.truncation(D)
        if T.vanishing_degree() is not None:
            return T
        if D >= limit:
            return T
        D *= 2


def build_skew_action(V: BraidedVectorSpace, relations: Sequence[NcPolynomial], Y: Sequence[Elem] = (),
                      name: str = "skew", H: Optional[HopfData] = None, check_confluence: bool = True
                      ) -> ModuleAlgebraAction:
    """B(V) # G acting on A(Y) = k<c_i, w_m>/(c_i c_j - q_ij c_j c_i, c_k w_m - mu_m(g_k) w_m c_k, w_l w_m - w_m w_l)."""
    theta = V.dim
    G = V.group
    F = V.field
    names = [f"c{i + 1}" for i in range(theta)] + [f"w{k + 1}" for k in range(len(Y))]
    Y = [G.elem(mu) for mu in Y]
    N = len(names)
    one = F.one()
    qm = [[one] * N for _ in range(N)]
    for i in range(theta):
        for j in range(theta):
            qm[i][j] = V.q(i, j)
        for k, mu in enumerate(Y):
            qm[i][theta + k] = V.chi_at(mu, V.generators[i].g)
    A = skew_polynomial_system(names, qm, F, check=check_confluence)
    chis = [gen.chi for gen in V.generators] + list(Y)
    weight_cache: Dict = {}

    def weight(w):
        hit = weight_cache.get(w)
        if hit is None:
            hit = G.sum(chis[i] for i in w)
            weight_cache[w] = hit
        return hit

    if H is None:
        T = nichols_top_cutoff(V, relations)
        H = bosonization_build(V, relations, T.D, algebra=T)
    inner = [InnerElement(f"c{i + 1}", {(i,): one}, V.generators[i].g, V.generators[i].chi) for i in range(theta)]
    ref: List = []
    act = ModuleAlgebraAction(H, A, G, F, weight, inner, _bosonization_words(H, V),
                              _bosonization_relations(ref, V, relations), name=name,
                              generator_keys=[(i,) for i in range(N)],
                              info={"V": V, "Y": Y, "nichols_relations": list(relations)})
    ref.append(act)
    return act


def build_cartan_action(V: BraidedVectorSpace, C: CartanData, Y: Sequence[Elem] = (),
                        order_restrictions: bool = True) -> ModuleAlgebraAction:
    bad = cartan_violations(V, C, order_restrictions)
    if bad:
        raise CartanIncompatible("; ".join(bad))
    rels = cartan_nichols_relations(V, C)
    act = build_skew_action(V, rels, Y, name="cartan")
    act.info["cartan"] = C
    return act


def univ_relations(V: BraidedVectorSpace, relations: Sequence[NcPolynomial], D: int) -> List[NcPolynomial]:
    """r ._adj a for every relation r and word a with deg r + |a| <= D (zero results dropped)."""
    from ..quotient import all_words

    out = []
    for r in relations:
        k = r.max_degree()
        for d in range(0, D - k + 1):
            for w in all_words(V.dim, d):
                e = braided_adjoint(r, NcPolynomial.word(V, w))
                if e:
                    out.append(e)
    return out


def commutator_relations(V: BraidedVectorSpace, relations: Sequence[NcPolynomial]) -> List[NcPolynomial]:
    from ..ncpoly import skew_commutator

    out = []
    for r in relations:
        for j in range(V.dim):
            e = skew_commutator(r, NcPolynomial.gen(V, j))
            if e:
                out.append(e)
    return out


def build_universal_algebra(V: BraidedVectorSpace, relations: Sequence[NcPolynomial], D: int,
                            materialize: str = "adjoint") -> Tuple[Presentation, ModuleAlgebraAction]:
    """A_univ(V) truncated at D with B(V) # G acting by x_i -> [c_i, -]_sk.

    ``materialize="adjoint"`` uses all r ._adj a up to degree D;
    ``"commutator"`` uses only [r, x_j]_sk.
    """
    for r in relations:
        if not r.is_homogeneous():
            raise ValueError(f"relation {r} is not homogeneous")
    top = max((r.max_degree() for r in relations), default=0)
    if D < top:
        raise ValueError(f"cutoff {D} is below the top relation degree {top}")
    gens = univ_relations(V, relations, D) if materialize == "adjoint" else commutator_relations(V, relations)
    names = [f"c{i + 1}" for i in range(V.dim)]
    P = Presentation(names, gens, V=V)
    T = P.truncation(D)
    T.scalars = V.field
    Tn = nichols_top_cutoff(V, relations)
    H = bosonization_build(V, relations, Tn.D, algebra=Tn)
    G = V.group
    inner = [InnerElement(f"c{i + 1}", T.project_word((i,)), V.generators[i].g, V.generators[i].chi)
             for i in range(V.dim)]
    ref: List = []
    act = ModuleAlgebraAction(H, T, G, V.field, lambda w: V.chi_of(w), inner, _bosonization_words(H, V),
                              _bosonization_relations(ref, V, relations), name="universal",
                              generator_keys=[(i,) for i in range(V.dim)],
                              info={"V": V, "nichols_relations": list(relations)})
    ref.append(act)
    return P, act
