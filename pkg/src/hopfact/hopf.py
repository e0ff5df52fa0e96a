"""Finite-dimensional Hopf algebras as explicit structure constants.

A :class:`HopfData` stores, on the basis e_0..e_{N-1}, the products
e_a e_b, coproducts, counit and antipode as sparse dicts over an exact
scalar field.  Builders cover generalized Taft algebras, group algebras
and bosonizations B(V) # kG; :func:`verify_hopf_axioms` certifies them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exact_fields import CyclotomicField, CycNumber, multiplicative_order, primitive_root_pair
from .groups import BraidedVectorSpace, Elem, FinAbGroup
from .linalg import EchelonBasis, kernel_of_images, vec_equal, vec_iadd, vec_scale
from .ncpoly import NcPolynomial, braided_antipode, braided_coproduct, format_word, qbinomial
from .quotient import Presentation, TruncatedAlgebra

Vec = Dict[int, object]
TVec = Dict[Tuple[int, int], object]


class NotFiniteDimensional(ValueError):
    def __init__(self, message, witness_degree=None):
        super().__init__(message)
        self.witness_degree = witness_degree


@dataclass
class SkewPrimitive:
    element: Vec
    g: int
    character: Optional[Elem] = None


@dataclass
class HopfData:
    labels: List[str]
    scalars: object
    unit: int
    mult: Dict[Tuple[int, int], Vec]
    comult: Dict[int, TVec]
    counit: List[object]
    antipode: Dict[int, Vec]
    grouplikes: List[int]
    skew_primitives: List[SkewPrimitive] = field(default_factory=list)
    generators: List[int] = field(default_factory=list)
    group: Optional[FinAbGroup] = None
    group_index: Dict[Elem, int] = field(default_factory=dict)
    info: Dict[str, object] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def one(self) -> Vec:
        return {self.unit: self.scalars(1)}

    def basis_vec(self, i: int) -> Vec:
        return {i: self.scalars(1)}

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for a, ca in x.items():
            for b, cb in y.items():
                vec_iadd(out, self.mult[(a, b)], ca * cb)
        return out

    def delta(self, x: Vec) -> TVec:
        out: TVec = {}
        for a, c in x.items():
            vec_iadd(out, self.comult[a], c)
        return out

    def eps(self, x: Vec):
        out = self.scalars(0)
        for a, c in x.items():
            out = out + c * self.counit[a]
        return out

    def S(self, x: Vec) -> Vec:
        out: Vec = {}
        for a, c in x.items():
            vec_iadd(out, self.antipode[a], c)
        return out

    def tensor_mul(self, s: TVec, t: TVec) -> TVec:
        out: TVec = {}
        for (a, b), c1 in s.items():
            for (a2, b2), c2 in t.items():
                c = c1 * c2
                for k, v in self.mult[(a, a2)].items():
                    cv = c * v
                    for l, u in self.mult[(b, b2)].items():
                        vec_iadd(out, {(k, l): cv * u})
        return out

    def fmt(self, x: Vec) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            c = x[k]
            parts.append(self.labels[k] if c == 1 else f"({c})*{self.labels[k]}")
        return " + ".join(parts)

    def fmt_tensor(self, t: TVec) -> str:
        if not t:
            return "0"
        return " + ".join(f"({c})*{self.labels[a]}(x){self.labels[b]}" for (a, b), c in sorted(t.items()))


def _power(name: str, k: int) -> str:
    return "" if k == 0 else (name if k == 1 else f"{name}^{k}")


def _group_label(g: Elem) -> str:
    if not any(g):
        return ""
    if len(g) == 1:
        return _power("g", g[0])
    return "g" + str(tuple(g)).replace(" ", "")


def _monomial_label(*parts: str) -> str:
    return "*".join(p for p in parts if p) or "1"


# --------------------------------------------------------------------------
# Taft algebras
# --------------------------------------------------------------------------

@dataclass
class TaftSpec:
    n: int
    m: int
    alpha: object = 0
    zeta: Optional[CycNumber] = None
    q: Optional[CycNumber] = None

    def resolve(self) -> Tuple[CycNumber, CycNumber]:
        if self.n < 1 or self.m < 1 or self.n % self.m:
            raise ValueError(f"m={self.m} must divide n={self.n}")
        if self.zeta is None:
            field_ = self.q.field if self.q is not None else CyclotomicField(self.n)
            zeta, q = primitive_root_pair(self.n, self.m, field_, self.q)
        else:
            zeta = self.zeta
            if multiplicative_order(zeta) != self.n:
                raise ValueError(f"zeta={zeta} is not a primitive {self.n}-th root of unity")
            q = zeta ** (self.n // self.m)
            if self.q is not None and self.q != q:
                raise ValueError(f"q={self.q} differs from zeta^(n/m)={q}")
        if multiplicative_order(q) != self.m:
            raise ValueError(f"q={q} does not have order m={self.m}")
        return zeta, q


def taft_build(spec: TaftSpec, qbinom: Optional[Callable] = None) -> HopfData:
    """T(n,m,alpha) on the basis g^i x^j (0<=i<n, 0<=j<m).

    ``qbinom`` overrides the Gaussian binomials in the coproduct; it exists
    so that a corrupted table can serve as a negative control.
    """
    zeta, q = spec.resolve()
    n, m = spec.n, spec.m
    F = q.field
    alpha = F(spec.alpha)
    qb = qbinom or qbinomial
    one = F.one()
    idx = lambda i, j: (i % n) * m + j
    labels = [_monomial_label(_power("g", i), _power("x", j)) for i in range(n) for j in range(m)]
    qpow = [q ** k for k in range(m)]

    mult: Dict[Tuple[int, int], Vec] = {}
    for i in range(n):
        for j in range(m):
            for k in range(n):
                for l in range(m):
                    # x^j g^k = q^{-jk} g^k x^j
                    c = qpow[(-j * k) % m]
                    e = j + l
                    if e < m:
                        out = {idx(i + k, e): c}
                    elif alpha:
                        out = {}
                        vec_iadd(out, {idx(i + k, e - m): c * alpha})
                        vec_iadd(out, {idx(i + k + m, e - m): -c * alpha})
                    else:
                        out = {}
                    mult[(idx(i, j), idx(k, l))] = out

    comult: Dict[int, TVec] = {}
    for i in range(n):
        for j in range(m):
            t: TVec = {}
            for k in range(j + 1):
                # g^i x^k g^{j-k} (x) g^i x^{j-k}
                c = F(qb(j, k, q)) * qpow[(-k * (j - k)) % m]
                vec_iadd(t, {(idx(i + j - k, k), idx(i, j - k)): c})
            comult[idx(i, j)] = t

    counit = [one if j == 0 else F.zero() for i in range(n) for j in range(m)]
    H = HopfData(labels=labels, scalars=F, unit=idx(0, 0), mult=mult, comult=comult, counit=counit,
                 antipode={}, grouplikes=[idx(i, 0) for i in range(n)],
                 generators=[idx(1, 0), idx(0, 1)] if m > 1 else [idx(1, 0)])
    G = FinAbGroup([n])
    H.group = G
    H.group_index = {G.elem((i,)): idx(i, 0) for i in range(n)}
    # S(g^i x^j) = (-g^{-1} x)^j g^{-i}
    s_x = {idx(n - 1, 1): -one} if m > 1 else {}
    for i in range(n):
        for j in range(m):
            v = H.one()
            for _ in range(j):
                v = H.mul(v, s_x)
            H.antipode[idx(i, j)] = H.mul(v, {idx(-i, 0): one})
    if m > 1:
        H.skew_primitives = [SkewPrimitive({idx(0, 1): one}, idx(1, 0), G.elem((n // m,)))]
    H.info.update(n=n, m=m, alpha=alpha, zeta=zeta, q=q)
    return H


def group_algebra(G: FinAbGroup, field_=None) -> HopfData:
    F = field_ or CyclotomicField(G.exponent)
    elems = G.elements()
    index = {g: k for k, g in enumerate(elems)}
    one = F.one()
    labels = [_monomial_label(_group_label(g)) for g in elems]
    mult = {(a, b): {index[G.add(ga, gb)]: one} for a, ga in enumerate(elems) for b, gb in enumerate(elems)}
    comult = {a: {(a, a): one} for a in range(len(elems))}
    antipode = {a: {index[G.neg(g)]: one} for a, g in enumerate(elems)}
    gens = [index[G.elem([1 if t == s else 0 for t in range(G.rank)])] for s in range(G.rank)]
    return HopfData(labels=labels, scalars=F, unit=index[G.identity()], mult=mult, comult=comult,
                    counit=[one] * len(elems), antipode=antipode, grouplikes=list(range(len(elems))),
                    generators=gens, group=G, group_index=dict(index))


# --------------------------------------------------------------------------
# Bosonization
# --------------------------------------------------------------------------

def bosonization_build(V: BraidedVectorSpace, relations: Sequence[NcPolynomial], D: int,
                       algebra: Optional[TruncatedAlgebra] = None) -> HopfData:
    """B(V) # kG on the basis g*b (g in G, b a monomial basis word of B(V))."""
    p = Presentation.from_braided(V, relations)
    T = algebra or p.truncation(D)
    vanish = T.vanishing_degree()
    if vanish is None:
        raise NotFiniteDimensional(f"the quotient is nonzero in every degree up to {T.D}", witness_degree=T.D)
    G = V.group
    F = V.field
    one = F.one()
    words = T.all_basis()
    elems = G.elements()
    wpos = {w: k for k, w in enumerate(words)}
    gpos = {g: k for k, g in enumerate(elems)}
    nw = len(words)
    idx = lambda g, w: gpos[g] * nw + wpos[w]
    labels = []
    for g in elems:
        for w in words:
            labels.append(_monomial_label(_group_label(g), format_word(w, V.names) if w else ""))

    g_of = {w: V.g_of(w) for w in words}
    chi_of = {w: V.chi_of(w) for w in words}

    # (g b)(h b') = chi_b(h)^{-1} gh (b b')
    bb: Dict[Tuple[int, int], Dict] = {}
    for a in words:
        for b in words:
            bb[(wpos[a], wpos[b])] = T.mul({a: one}, {b: one}) if len(a) + len(b) <= T.D else {}
    mult: Dict[Tuple[int, int], Vec] = {}
    for g in elems:
        for a in words:
            for h in elems:
                sc = F.root(-V.chi_exp(chi_of[a], h))
                gh = G.add(g, h)
                for b in words:
                    prod = bb[(wpos[a], wpos[b])]
                    mult[(idx(g, a), idx(h, b))] = {idx(gh, w): c * sc for w, c in prod.items()}

    # Delta(b) = sum b1 g_{b2} (x) b2 = sum chi_{b1}(g_{b2})^{-1} g_{b2} b1 (x) b2
    delta_words: Dict = {}
    for w in words:
        t: Dict = {}
        for (l, r), c in braided_coproduct(NcPolynomial.word(V, w)).items():
            pl = T.project_word(l)
            pr = T.project_word(r)
            if not pl or not pr:
                continue
            for bl, cl in pl.items():
                for br, cr in pr.items():
                    vec_iadd(t, {(bl, br): c * cl * cr})
        delta_words[w] = t
    comult: Dict[int, TVec] = {}
    for g in elems:
        for w in words:
            t: TVec = {}
            for (bl, br), c in delta_words[w].items():
                gb2 = g_of[br]
                sc = F.root(-V.chi_exp(chi_of[bl], gb2))
                vec_iadd(t, {(idx(G.add(g, gb2), bl), idx(g, br)): c * sc})
            comult[idx(g, w)] = t

    counit = [one if not w else F.zero() for g in elems for w in words]
    H = HopfData(labels=labels, scalars=F, unit=idx(G.identity(), ()), mult=mult, comult=comult,
                 counit=counit, antipode={}, grouplikes=[idx(g, ()) for g in elems])
    H.group = G
    H.group_index = {g: idx(g, ()) for g in elems}

    # S(g b) = g_b^{-1} S_R(b) g^{-1}
    for g in elems:
        for w in words:
            sr = T.reduce(braided_antipode(NcPolynomial.word(V, w)))
            left = {idx(G.neg(g_of[w]), b): c for b, c in sr.items()}
            H.antipode[idx(g, w)] = H.mul(left, {idx(G.neg(g), ()): one})

    unit_gens = []
    for s in range(G.rank):
        e = G.elem([1 if t == s else 0 for t in range(G.rank)])
        unit_gens.append(idx(e, ()))
    H.generators = unit_gens + [idx(G.identity(), (i,)) for i in range(V.dim) if (i,) in wpos]
    H.skew_primitives = [SkewPrimitive({idx(G.identity(), (i,)): one}, idx(V.generators[i].g, ()),
                                       V.generators[i].chi)
                         for i in range(V.dim) if (i,) in wpos]
    H.info.update(nichols=T, braided_space=V)
    return H


# --------------------------------------------------------------------------
# Axiom verification
# --------------------------------------------------------------------------

@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: Optional[str] = None
    detail: Optional[str] = None


@dataclass
class AxiomReport:
    checks: List[AxiomCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> List[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _tensor3_left(H: HopfData, t: TVec) -> Dict[Tuple[int, int, int], object]:
    out: Dict = {}
    for (a, b), c in t.items():
        for (a1, a2), c1 in H.comult[a].items():
            vec_iadd(out, {(a1, a2, b): c * c1})
    return out


def _tensor3_right(H: HopfData, t: TVec) -> Dict[Tuple[int, int, int], object]:
    out: Dict = {}
    for (a, b), c in t.items():
        for (b1, b2), c1 in H.comult[b].items():
            vec_iadd(out, {(a, b1, b2): c * c1})
    return out


def generated_span_dim(H: HopfData, gens: Sequence[int]) -> int:
    """Dimension of the subalgebra generated by ``gens`` (breadth-first products)."""
    eb = EchelonBasis()
    eb.add(H.one())
    frontier = [H.one()]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = H.mul(H.basis_vec(g), v)
                r, _ = eb.reduce(w)
                if r:
                    eb.add(r)
                    new.append(r)
        frontier = new
    return len(eb)


def verify_hopf_axioms(H: HopfData, exhaustive_limit: int = 128) -> AxiomReport:
    """Check every Hopf algebra axiom on basis elements.

    Multiplicativity of Delta is checked on all pairs when dim H <= ``exhaustive_limit``;
    above that it is checked on (algebra generator, basis) pairs, which is
    equivalent once associativity holds and the generators are certified to
    generate H.
    """
    F = H.scalars
    one = F.one()
    N = H.dim
    checks: List[AxiomCheck] = []

    def first(name, gen):
        for w in gen:
            if w is not None:
                checks.append(AxiomCheck(name, False, w))
                return
        checks.append(AxiomCheck(name, True))

    def unit_law():
        u = H.unit
        for a in range(N):
            if not vec_equal(H.mult[(u, a)], {a: one}) or not vec_equal(H.mult[(a, u)], {a: one}):
                yield f"1*{H.labels[a]} or {H.labels[a]}*1 != {H.labels[a]}"
    first("unit", unit_law())

    def assoc():
        for a in range(N):
            for b in range(N):
                ab = H.mult[(a, b)]
                for c in range(N):
                    left: Vec = {}
                    for k, v in ab.items():
                        vec_iadd(left, H.mult[(k, c)], v)
                    right: Vec = {}
                    for k, v in H.mult[(b, c)].items():
                        vec_iadd(right, H.mult[(a, k)], v)
                    if not vec_equal(left, right):
                        yield f"({H.labels[a]}*{H.labels[b]})*{H.labels[c]} = {H.fmt(left)} but {H.labels[a]}*({H.labels[b]}*{H.labels[c]}) = {H.fmt(right)}"
    first("associativity", assoc())

    def coassoc():
        for a in range(N):
            d = H.comult[a]
            l, r = _tensor3_left(H, d), _tensor3_right(H, d)
            if not vec_equal(l, r):
                yield f"(Delta(x)id)Delta({H.labels[a]}) != (id(x)Delta)Delta({H.labels[a]})"
    first("coassociativity", coassoc())

    def counit_law():
        for a in range(N):
            l: Vec = {}
            r: Vec = {}
            for (x, y), c in H.comult[a].items():
                vec_iadd(l, {y: c * H.counit[x]})
                vec_iadd(r, {x: c * H.counit[y]})
            if not vec_equal(l, {a: one}) or not vec_equal(r, {a: one}):
                yield f"counit law fails on {H.labels[a]}"
    first("counit", counit_law())

    def eps_mult():
        for a in range(N):
            for b in range(N):
                if H.eps(H.mult[(a, b)]) != H.counit[a] * H.counit[b]:
                    yield f"eps({H.labels[a]}*{H.labels[b]}) != eps({H.labels[a]})eps({H.labels[b]})"
        if H.counit[H.unit] != 1:
            yield "eps(1) != 1"
    first("counit_multiplicative", eps_mult())

    exhaustive = N <= exhaustive_limit or not H.generators
    if not exhaustive and generated_span_dim(H, H.generators) != N:
        exhaustive = True
    lefts = range(N) if exhaustive else H.generators

    def delta_mult():
        if not vec_equal(H.comult[H.unit], {(H.unit, H.unit): one}):
            yield "Delta(1) != 1(x)1"
        for a in lefts:
            for b in range(N):
                lhs = H.delta(H.mult[(a, b)])
                rhs = H.tensor_mul(H.comult[a], H.comult[b])
                if not vec_equal(lhs, rhs):
                    yield f"Delta({H.labels[a]}*{H.labels[b]}) = {H.fmt_tensor(lhs)} but Delta({H.labels[a]})Delta({H.labels[b]}) = {H.fmt_tensor(rhs)}"
    first("comultiplication_multiplicative", delta_mult())
    checks[-1].detail = "all basis pairs" if exhaustive else "generator x basis pairs (generators certified)"

    def antipode_law():
        for a in range(N):
            l: Vec = {}
            r: Vec = {}
            for (x, y), c in H.comult[a].items():
                vec_iadd(l, H.mul(H.antipode[x], {y: c}))
                vec_iadd(r, H.mul({x: c}, H.antipode[y]))
            target = vec_scale(H.one(), H.counit[a])
            if not vec_equal(l, target):
                yield f"S(h1)h2 = {H.fmt(l)} != eps(h)1 for h = {H.labels[a]}"
            if not vec_equal(r, target):
                yield f"h1S(h2) = {H.fmt(r)} != eps(h)1 for h = {H.labels[a]}"
    first("antipode", antipode_law())

    def grouplike_law():
        for g in H.grouplikes:
            if not vec_equal(H.comult[g], {(g, g): one}) or H.counit[g] != 1:
                yield f"{H.labels[g]} is not grouplike"
        for sp in H.skew_primitives:
            d = H.delta(sp.element)
            target: TVec = {}
            for k, c in sp.element.items():
                vec_iadd(target, {(k, H.unit): c})
                vec_iadd(target, {(sp.g, k): c})
            if not vec_equal(d, target):
                yield f"{H.fmt(sp.element)} is not ({H.labels[sp.g]},1)-skew primitive"
    first("grouplikes_and_skew_primitives", grouplike_law())
    return AxiomReport(checks)


# --------------------------------------------------------------------------
# Skew primitives
# --------------------------------------------------------------------------

@dataclass
class SkewPrimitiveSpace:
    g: int
    basis: List[Vec]
    nontrivial: List[Vec]


def _adjoint(H: HopfData, h: int, v: Vec) -> Vec:
    return H.mul(H.mul(H.basis_vec(h), v), H.antipode[h])


def skew_primitive_spaces(H: HopfData) -> Dict[int, SkewPrimitiveSpace]:
    """For each grouplike g: a basis of Prim_g(H) and of its part Prim_g(H)' off the trivial Ad-eigenspace."""
    F = H.scalars
    one = F.one()
    out = {}
    order = F(len(H.grouplikes))
    for g in H.grouplikes:
        images = []
        for a in range(H.dim):
            t = dict(H.comult[a])
            vec_iadd(t, {(a, H.unit): -one})
            vec_iadd(t, {(g, a): -one})
            images.append(t)
        prim = kernel_of_images(images, one=one)
        eb = EchelonBasis()
        for v in prim:
            eb.add(v)
        prim = eb.basis_vectors()
        # (id - P_1) with P_1 the average of Ad_h over grouplikes h
        ebp = EchelonBasis()
        for v in prim:
            avg: Vec = {}
            for h in H.grouplikes:
                vec_iadd(avg, _adjoint(H, h, v))
            w = dict(v)
            vec_iadd(w, avg, -one / order)
            if w:
                ebp.add(w)
        out[g] = SkewPrimitiveSpace(g, prim, ebp.basis_vectors())
    return out
