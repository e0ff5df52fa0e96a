"""Verification routines for module-algebra actions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..groups import BraidedVectorSpace, Elem, component_orders, default_root_words, generates_dual
from ..linalg import EchelonBasis, kernel_of_images, vec_iadd
from ..ncpoly import NcPolynomial, coideal_verdicts, root_vector
from ..quotient import (DegreeOverflow, Presentation, RewriteSystem, ideal_difference)
from ..report import ActionReport, Check, timed
from .action import ModuleAlgebraAction, commutator_relations, univ_relations


class NotInvariant(ValueError):
    pass


def _degree_cap(act: ModuleAlgebraAction) -> Optional[int]:
    return getattr(act.target, "D", None)


def _fits(act: ModuleAlgebraAction, deg: int) -> bool:
    cap = _degree_cap(act)
    return cap is None or deg <= cap


def _hopf_generators(act: ModuleAlgebraAction) -> List[Tuple[str, Dict[int, object], Tuple]]:
    """(label, element of H, action token) for a generating set of H."""
    H = act.hopf
    G = act.group
    out = []
    for s in range(G.rank):
        e = G.elem([1 if t == s else 0 for t in range(G.rank)])
        out.append((H.labels[H.group_index[e]], H.basis_vec(H.group_index[e]), ("g", e)))
    for i, sp in enumerate(H.skew_primitives):
        out.append((H.fmt(sp.element), sp.element, ("x", i)))
    return out


def verify_module_algebra(act: ModuleAlgebraAction, D: int) -> ActionReport:
    """Relations of H act as zero, Leibniz rule on generators, h.1 = eps(h)1, inner elements homogeneous."""
    rep = ActionReport()
    T = act.target
    one = T.scalars(1)
    basis = {d: list(T.basis(d)) for d in range(D + 1)}
    all_keys = [k for d in range(D + 1) for k in basis[d]]
    skipped = {"relations": 0, "leibniz": 0}

    def relations():
        for rel in act.relations:
            for k in all_keys:
                try:
                    v = rel.apply({k: one})
                except DegreeOverflow:
                    skipped["relations"] += 1
                    continue
                if v:
                    return False, {"relation": rel.name, "element": act.fmt({k: one}), "value": act.fmt(v)}, None
        return True, None, {"relations": [r.name for r in act.relations], "basis_elements": len(all_keys),
                            "skipped_for_cutoff": skipped["relations"]}
    rep.add(timed("relations_act_as_zero", relations))

    def leibniz():
        H = act.hopf
        count = 0
        for label, hvec, token in _hopf_generators(act):
            delta = H.delta(hvec)
            for da in range(D + 1):
                for db in range(D + 1 - da):
                    for a in basis[da]:
                        av = {a: one}
                        try:
                            left_parts = {h1: act.act_basis(h1, av) for (h1, _h2) in delta}
                        except DegreeOverflow:
                            skipped["leibniz"] += len(basis[db])
                            continue
                        for b in basis[db]:
                            bv = {b: one}
                            try:
                                lhs = act.act_token(token, T.mul(av, bv))
                                rhs: Dict = {}
                                for (h1, h2), c in delta.items():
                                    la = left_parts[h1]
                                    if not la:
                                        continue
                                    rb = act.act_basis(h2, bv)
                                    if rb:
                                        vec_iadd(rhs, T.mul(la, rb), T.scalars(c))
                            except DegreeOverflow:
                                skipped["leibniz"] += 1
                                continue
                            count += 1
                            diff = dict(lhs)
                            vec_iadd(diff, rhs, -one)
                            if diff:
                                return False, {"generator": label, "a": act.fmt(av), "b": act.fmt(bv),
                                               "h.(ab)": act.fmt(lhs), "(h1.a)(h2.b)": act.fmt(rhs)}, None
        return True, None, {"pairs": count, "skipped_for_cutoff": skipped["leibniz"]}
    rep.add(timed("leibniz", leibniz))

    def unit():
        H = act.hopf
        for h in range(H.dim):
            v = act.act_basis(h, T.one())
            target = {k: c * T.scalars(H.counit[h]) for k, c in T.one().items()} if H.counit[h] else {}
            diff = dict(v)
            vec_iadd(diff, target, -one)
            if diff:
                return False, {"h": H.labels[h], "h.1": act.fmt(v)}, None
        return True, None, {"hopf_basis": H.dim}
    rep.add(timed("unit", unit))

    def homogeneity():
        for inn in act.inner:
            for k in inn.element:
                if act.weight(k) != act.group.elem(inn.chi):
                    return False, {"inner": inn.name, "key": str(k)}, None
        return True, None, {"inner": [inn.name for inn in act.inner]}
    rep.add(timed("inner_elements_homogeneous", homogeneity))
    return rep


# --------------------------------------------------------------------------
# Invariants and Galois rank
# --------------------------------------------------------------------------

def invariants_upto(act: ModuleAlgebraAction, D: int) -> Dict[int, List[Dict]]:
    """Per degree, a basis of the elements fixed by G and killed by every x_i."""
    T = act.target
    one = T.scalars(1)
    ident = act.group.identity()
    out = {}
    for d in range(D + 1):
        cands = [k for k in T.basis(d) if act.weight(k) == ident]
        images = []
        for k in cands:
            img: Dict = {}
            for i in range(len(act.inner)):
                for key, c in act.x_act(i, {k: one}).items():
                    img[(i, key)] = c
            images.append(img)
        ker = kernel_of_images(images, one=one)
        vecs = [{cands[j]: c for j, c in v.items()} for v in ker]
        eb = EchelonBasis()
        for v in vecs:
            eb.add(v)
        out[d] = eb.basis_vectors()
    return out


def is_invariant(act: ModuleAlgebraAction, v: Dict) -> bool:
    for s in range(act.group.rank):
        e = act.group.elem([1 if t == s else 0 for t in range(act.group.rank)])
        diff = act.g_act(e, v)
        vec_iadd(diff, v, -act.target.scalars(1))
        if diff:
            return False
    return all(not act.x_act(i, v) for i in range(len(act.inner)))


def same_span(vs: Sequence[Dict], ws: Sequence[Dict]) -> bool:
    a, b = EchelonBasis(), EchelonBasis()
    for v in vs:
        a.add(v)
    for w in ws:
        b.add(w)
    return len(a) == len(b) and all(a.contains(w) for w in ws)


@dataclass
class GaloisRank:
    rank: Optional[object]
    dim_hopf: int
    galois: bool
    free: bool
    invariant_dims: List[int]
    quotient_dims: List[int]
    algebra_dims: List[int]
    base_dim: int


def _homogeneous_degree(T, v: Dict) -> int:
    degs = {T.degree_of(k) for k in v}
    if len(degs) != 1:
        raise ValueError("invariant generators must be homogeneous")
    return degs.pop()


def subalgebra_upto(T, gens: Sequence[Dict], D: int) -> Dict[int, EchelonBasis]:
    """Per degree <= D, the span of products of the homogeneous elements ``gens``."""
    gdeg = [(_homogeneous_degree(T, v), v) for v in gens]
    Z: Dict[int, EchelonBasis] = {}
    for d in range(D + 1):
        eb = EchelonBasis()
        if d == 0:
            eb.add(T.one())
        for k, g in gdeg:
            if 0 < k <= d:
                for z in Z[d - k].basis_vectors():
                    eb.add(T.mul(g, z))
        grew = True
        while grew:
            grew = False
            for k, g in gdeg:
                if k == 0:
                    for z in list(eb.basis_vectors()):
                        if eb.add(T.mul(g, z)):
                            grew = True
        Z[d] = eb
    return Z


def galois_rank_check(act: ModuleAlgebraAction, invariant_gens: Sequence[Dict], D: int) -> GaloisRank:
    """Rank of the target over the subalgebra Z generated by ``invariant_gens``, compared with dim H.

    With u_d = dim (A / Z^+ A)_d the rank is sum(u_d) / dim Z_0, valid when A
    is free over Z, which is certified by dim Z_0 * dim A_d = sum_k dim Z_k * u_(d-k)
    for every d <= D together with u vanishing at the top of the window.
    """
    T = act.target
    one = T.scalars(1)
    for v in invariant_gens:
        if not is_invariant(act, v):
            raise NotInvariant(f"{act.fmt(v)} is not invariant")
    Z = subalgebra_upto(T, invariant_gens, D)
    zdims = [len(Z[d]) for d in range(D + 1)]
    adims, udims = [], []
    for d in range(D + 1):
        basis = list(T.basis(d))
        adims.append(len(basis))
        eb = EchelonBasis()
        for k in range(1, d + 1):
            for z in Z[k].basis_vectors():
                for a in T.basis(d - k):
                    eb.add(T.mul(z, {a: one}))
        udims.append(len(basis) - len(eb))
    z0 = zdims[0]
    free = all(z0 * adims[d] == sum(zdims[k] * udims[d - k] for k in range(d + 1)) for d in range(D + 1))
    settled = any(u == 0 for u in udims[1:])
    rank = None
    if free and settled and sum(udims) % z0 == 0:
        rank = sum(udims) // z0
    return GaloisRank(rank, act.hopf.dim, rank == act.hopf.dim, free and settled, zdims, udims, adims, z0)


# --------------------------------------------------------------------------
# Inner faithfulness
# --------------------------------------------------------------------------

def inner_faithful_check(act: ModuleAlgebraAction, D: int) -> ActionReport:
    """(a) G acts faithfully; (b) x's sharing a grouplike act by linearly independent operators."""
    rep = ActionReport()
    T = act.target
    one = T.scalars(1)
    G = act.group

    def faithful():
        keys = list(act.generator_keys) or [k for d in range(D + 1) for k in T.basis(d)]
        witnesses = {}
        for g in G.elements():
            if g == G.identity():
                continue
            hit = next((k for k in keys if act.char_scalar(act.weight(k), g) != 1), None)
            if hit is None:
                hit = next((k for d in range(D + 1) for k in T.basis(d)
                            if act.char_scalar(act.weight(k), g) != 1), None)
            if hit is None:
                return False, {"acts_trivially": str(tuple(g))}, None
            witnesses[str(tuple(g))] = act.fmt({hit: one})
        return True, None, {"witness_elements": witnesses}
    rep.add(timed("group_acts_faithfully", faithful))

    def prim_injective():
        by_g: Dict[Elem, List[int]] = {}
        for i, inn in enumerate(act.inner):
            by_g.setdefault(G.elem(inn.g), []).append(i)
        keys = list(act.generator_keys) or list(T.basis(1))
        wit = {}
        for g, idxs in by_g.items():
            eb = EchelonBasis()
            for i in idxs:
                vec: Dict = {}
                for k in keys:
                    try:
                        val = act.x_act(i, {k: one})
                    except DegreeOverflow:
                        continue
                    for key, c in val.items():
                        vec[(k, key)] = c
                if not eb.add(vec):
                    return False, {"dependent_operator": act.inner[i].name, "grouplike": str(tuple(g))}, None
            for i in idxs:
                c = act.inner[i].element
                wit[f"x{i + 1}.{act.inner[i].name}"] = act.fmt(act.x_act(i, c))
        return True, None, {"witness_values": wit}
    rep.add(timed("prim_prime_injective", prim_injective))
    return rep


def expected_inner_faithful(V: BraidedVectorSpace, Y: Sequence[Elem]) -> bool:
    return generates_dual([g.chi for g in V.generators] + list(Y), V.group)


# --------------------------------------------------------------------------
# Cartan-specific operator identities
# --------------------------------------------------------------------------

def qserre_operator_check(act: ModuleAlgebraAction) -> Check:
    """ad_sk(c_j)^(1 - a_ji)(c_i) = 0 in the target for i != j."""
    C = act.info["cartan"]
    theta = len(act.inner)

    def run():
        vals = {}
        for i in range(theta):
            for j in range(theta):
                if i == j:
                    continue
                e = 1 - C.matrix[j][i]
                v = act.x_word([j] * e, act.inner[i].element)
                vals[f"ad(c{j + 1})^{e}(c{i + 1})"] = act.fmt(v)
                if v:
                    return False, {"pair": (j + 1, i + 1), "value": act.fmt(v)}, vals
        return True, None, vals
    return timed("qserre_operators_vanish", run)


def adjoint_nilpotence_check(act: ModuleAlgebraAction, D: int) -> Check:
    """x_i^(N_i) and x_gamma^N (rank-2 root vectors) annihilate the basis up to degree D."""
    V = act.info.get("V")
    C = act.info.get("cartan")
    T = act.target
    one = T.scalars(1)

    def run():
        if V is None or V.dim == 0:
            return True, None, {"operators": []}
        ops = []
        if C is not None:
            orders = component_orders(V, C)
            comps = C.components()
            for word in (C.root_words or default_root_words(C.matrix)):
                comp = next(k for k, cp in enumerate(comps) if word[0] in cp)
                ops.append((word, root_vector(V, word) ** orders[comp]))
        else:
            from ..exact_fields import multiplicative_order
            for i in range(V.dim):
                N = multiplicative_order(V.q(i, i))
                ops.append(((i,), NcPolynomial.gen(V, i) ** N))
        count = 0
        for word, op in ops:
            for d in range(D + 1):
                for k in T.basis(d):
                    try:
                        v = act.x_poly(op, {k: one})
                    except DegreeOverflow:
                        continue
                    count += 1
                    if v:
                        return False, {"root_word": word, "element": act.fmt({k: one}), "value": act.fmt(v)}, None
        return True, None, {"operators": [str(op) for _, op in ops], "evaluations": count}
    return timed("adjoint_nilpotence", run)


# --------------------------------------------------------------------------
# Universal algebra
# --------------------------------------------------------------------------

@dataclass
class UnivCheck:
    passed: bool
    coideal: Dict[int, bool]
    witness: Optional[dict]
    adjoint_relations: int
    commutator_relations: int


def univ_presentation_check(V: BraidedVectorSpace, relations: Sequence[NcPolynomial], D: int,
                            drop: Optional[int] = None) -> UnivCheck:
    """Does (r ._adj a : a in TV) equal ([r, x_j]_sk) up to degree D?  ``drop`` removes one commutator."""
    co = coideal_verdicts(relations, D)
    if not all(co.values()):
        bad = [i for i, ok in co.items() if not ok]
        return UnivCheck(False, co, {"hypothesis": "relations do not generate a coideal subalgebra",
                                     "relations": [str(relations[i]) for i in bad]}, 0, 0)
    adj = univ_relations(V, relations, D)
    com = commutator_relations(V, relations)
    if drop is not None:
        com = com[:drop] + com[drop + 1:]
    p_adj = Presentation.from_braided(V, sorted(adj, key=lambda r: r.max_degree()))
    p_com = Presentation.from_braided(V, com)
    miss = ideal_difference(p_adj, p_com, D)
    if miss is None:
        miss2 = ideal_difference(p_com, p_adj, D)
        if miss2 is None:
            return UnivCheck(True, co, None, len(adj), len(com))
        r, side = miss2, "commutator outside the adjoint ideal"
    else:
        r, side = miss, "adjoint relation outside the commutator ideal"
    from ..ncpoly import format_terms
    w = {"direction": side, "element": format_terms(r, V.names), "degree": len(next(iter(r)))}
    return UnivCheck(False, co, w, len(adj), len(com))


def maps_to_zero(rs: RewriteSystem, elems: Sequence[NcPolynomial]) -> Optional[NcPolynomial]:
    """First element with nonzero normal form, or None."""
    for e in elems:
        if rs.normal_form(e):
            return e
    return None


# --------------------------------------------------------------------------
# Ore model: commutation identity for c_i^m
# --------------------------------------------------------------------------

def commutation_identity_check(act: ModuleAlgebraAction, samples: int = 100, seed: int = 0,
                            max_len: int = 4) -> Check:
    """(c_i^m - 1) y - (g^m . y)(c_i^m - 1) = 0 on generators and seeded random products."""
    O = act.info["model"]
    A = O.ore
    m = O.m
    one = A.scalars(1)

    def run():
        gens = {"t": A.t(1), "y": A.element(O.y)}
        for j in range(1, O.s + 1):
            gens[f"c{j}"] = A.element(O.c(j))
        names = sorted(gens)
        rng = random.Random(seed)
        tests = [(n,) for n in names]
        for _ in range(samples):
            k = rng.randint(2, max_len)
            tests.append(tuple(rng.choice(names) for _ in range(k)))
        gm = act.group.elem((m,))
        for i in range(1, O.s + 1):
            u = A.element(O.c(i) ** m - 1)
            for word in tests:
                y = A.one()
                for nm in word:
                    y = A.mul(y, gens[nm])
                lhs = A.mul(u, y)
                vec_iadd(lhs, A.mul(act.g_act(gm, y), u), -one)
                if lhs:
                    return False, {"c": f"c{i}", "y": "*".join(word)}, None
        return True, None, {"generators": names, "random_products": samples, "seed": seed}
    return timed("commutation_identity", run)
