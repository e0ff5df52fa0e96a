"""The free braided algebra TV of a diagonal braided vector space.

Elements are :class:`NcPolynomial`, sparse maps from words (tuples of
generator indices) to scalars of the ambient cyclotomic field.  The module
also provides the braided Hopf structure of TV with primitive generators,
skew commutators and the braided adjoint action, q-Serre elements,
Gaussian binomials, and the symbolic expansion of [c, -]^m_sk.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_fields import CycNumber, multiplicative_order
from .groups import BraidedVectorSpace, CartanData, Elem, FinAbGroup

Word = Tuple[int, ...]
TensorDict = Dict[Tuple[Word, Word], CycNumber]


class NotHomogeneous(ValueError):
    """Operation defined only on elements homogeneous for the (Z, G, G^)-grading."""


class AmbientMismatch(ValueError):
    pass


class NcPolynomial:
    __slots__ = ("V", "terms")

    def __init__(self, V: BraidedVectorSpace, terms: Optional[Dict[Word, object]] = None):
        self.V = V
        clean: Dict[Word, CycNumber] = {}
        if terms:
            F = V.field
            for w, c in terms.items():
                c = F(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, V, terms) -> "NcPolynomial":
        obj = object.__new__(cls)
        obj.V = V
        obj.terms = terms
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, V) -> "NcPolynomial":
        return cls._raw(V, {})

    @classmethod
    def one(cls, V) -> "NcPolynomial":
        return cls._raw(V, {(): V.field.one()})

    @classmethod
    def gen(cls, V, i: int) -> "NcPolynomial":
        if not 0 <= i < V.dim:
            raise IndexError(f"generator index {i} out of range for dimension {V.dim}")
        return cls._raw(V, {(i,): V.field.one()})

    @classmethod
    def word(cls, V, w: Sequence[int], coeff=1) -> "NcPolynomial":
        return cls(V, {tuple(w): coeff})

    # -- grading ----------------------------------------------------------
    def tridegree(self, word: Word) -> Tuple[int, Elem, Elem]:
        return (len(word), self.V.g_of(word), self.V.chi_of(word))

    def is_homogeneous(self) -> bool:
        degs = {self.tridegree(w) for w in self.terms}
        return len(degs) <= 1

    def degree(self) -> Tuple[int, Elem, Elem]:
        """(total degree, G-degree, character) of a nonzero homogeneous element."""
        degs = {self.tridegree(w) for w in self.terms}
        if len(degs) != 1:
            raise NotHomogeneous(f"{self} is not homogeneous" if degs else "zero has no degree")
        return degs.pop()

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "NcPolynomial") -> None:
        if other.V is not self.V:
            raise AmbientMismatch("polynomials live over different braided vector spaces")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = NcPolynomial.one(self.V) * other
        if not isinstance(other, NcPolynomial) or other.V is not self.V:
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    def __neg__(self):
        return NcPolynomial._raw(self.V, {w: -c for w, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, CycNumber)):
            other = NcPolynomial.one(self.V) * other
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NcPolynomial._raw(self.V, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, CycNumber)):
            other = NcPolynomial.one(self.V) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            return nc_multiply(self, other)
        try:
            c = self.V.field(other)
        except TypeError:
            return NotImplemented
        if not c:
            return NcPolynomial.zero(self.V)
        return NcPolynomial._raw(self.V, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int) -> "NcPolynomial":
        out = NcPolynomial.one(self.V)
        for _ in range(k):
            out = out * self
        return out

    def homogeneous_parts(self) -> Dict[Tuple[int, Elem, Elem], "NcPolynomial"]:
        parts: Dict[Tuple[int, Elem, Elem], Dict[Word, CycNumber]] = {}
        for w, c in self.terms.items():
            parts.setdefault(self.tridegree(w), {})[w] = c
        return {k: NcPolynomial._raw(self.V, v) for k, v in parts.items()}

    def __str__(self) -> str:
        return format_terms(self.terms, self.V.names)

    def __repr__(self) -> str:
        return f"NcPolynomial({self})"


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    out, i = [], 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        out.append(names[w[i]] if j - i == 1 else f"{names[w[i]]}^{j - i}")
        i = j
    return "*".join(out)


def format_terms(terms: Dict[Word, CycNumber], names: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for w in sorted(terms, key=lambda w: (len(w), w)):
        c = terms[w]
        ws = format_word(w, names)
        cs = str(c)
        if not w:
            parts.append(cs)
        elif c == 1:
            parts.append(ws)
        elif c == -1:
            parts.append("-" + ws)
        elif " " in cs:
            parts.append(f"({cs})*{ws}")
        else:
            parts.append(f"{cs}*{ws}")
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def nc_multiply(a: NcPolynomial, b: NcPolynomial) -> NcPolynomial:
    """Concatenation product, extended bilinearly."""
    a._check(b)
    out: Dict[Word, CycNumber] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            w = wa + wb
            v = ca * cb
            prev = out.get(w)
            v = v if prev is None else prev + v
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return NcPolynomial._raw(a.V, out)


def skew_commutator(r: NcPolynomial, a: NcPolynomial) -> NcPolynomial:
    """[r, a]_sk = r a - chi_a(g_r) a r for homogeneous r and a."""
    r._check(a)
    if not r or not a:
        return NcPolynomial.zero(r.V)
    _, g_r, _ = r.degree()
    _, _, chi_a = a.degree()
    return r * a - a * r * r.V.field.root(r.V.chi_exp(chi_a, g_r))


def ad_sk(x: NcPolynomial, times: int = 1):
    """The operator b -> [x, b]_sk iterated ``times`` times."""
    def op(b: NcPolynomial) -> NcPolynomial:
        for _ in range(times):
            b = skew_commutator(x, b)
        return b
    return op


def root_vector(V: BraidedVectorSpace, word: Sequence[int]) -> NcPolynomial:
    """ad_sk(x_i1) ... ad_sk(x_i(k-1)) (x_ik)."""
    out = NcPolynomial.gen(V, word[-1])
    for i in reversed(word[:-1]):
        out = skew_commutator(NcPolynomial.gen(V, i), out)
    return out


# --------------------------------------------------------------------------
# Braided Hopf structure of TV
# --------------------------------------------------------------------------

def _word_coproduct(V: BraidedVectorSpace, w: Word) -> List[Tuple[Word, Word, int]]:
    """Delta of a word as (left, right, exponent of zeta_N) triples.

    A letter sent left at position p' picks up q_{i_p i_p'} for every
    earlier letter p sent right (the braiding moves it past them).
    """
    k = len(w)
    out = []
    positions = range(k)
    for size in range(k + 1):
        for left in combinations(positions, size):
            ls = set(left)
            e = 0
            for p in positions:
                if p in ls:
                    continue
                for p2 in left:
                    if p2 > p:
                        e += V.qexp(w[p], w[p2])
            out.append((tuple(w[p] for p in left), tuple(w[p] for p in positions if p not in ls), e))
    return out


def braided_coproduct(a: NcPolynomial) -> TensorDict:
    """Delta(a) in TV (x) TV, generators primitive, braided-multiplicative."""
    V = a.V
    F = V.field
    out: TensorDict = {}
    for w, c in a.terms.items():
        for l, r, e in _word_coproduct(V, w):
            v = c * F.root(e)
            key = (l, r)
            prev = out.get(key)
            v = v if prev is None else prev + v
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def tensor_braided_product(V: BraidedVectorSpace, s: TensorDict, t: TensorDict) -> TensorDict:
    """(a (x) b)(a' (x) b') = chi_a'(g_b) a a' (x) b b'."""
    F = V.field
    out: TensorDict = {}
    for (a, b), c1 in s.items():
        gb = V.g_of(b)
        for (a2, b2), c2 in t.items():
            e = V.chi_exp(V.chi_of(a2), gb)
            v = c1 * c2 * F.root(e)
            key = (a + a2, b + b2)
            prev = out.get(key)
            v = v if prev is None else prev + v
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def braided_counit(a: NcPolynomial) -> CycNumber:
    return a.terms.get((), a.V.field.zero())


def braided_antipode(a: NcPolynomial) -> NcPolynomial:
    """S(x_i1...x_ik) = (-1)^k prod_{p<p'} q_{i_p i_p'} x_ik...x_i1."""
    V = a.V
    F = V.field
    out: Dict[Word, CycNumber] = {}
    for w, c in a.terms.items():
        e = 0
        for p in range(len(w)):
            for p2 in range(p + 1, len(w)):
                e += V.qexp(w[p], w[p2])
        v = c * F.root(e)
        if len(w) % 2:
            v = -v
        rw = tuple(reversed(w))
        prev = out.get(rw)
        v = v if prev is None else prev + v
        if v:
            out[rw] = v
        else:
            out.pop(rw, None)
    return NcPolynomial._raw(V, out)


def braided_adjoint(a: NcPolynomial, b: NcPolynomial) -> NcPolynomial:
    """a ._adj b = a_1 ((a_2)_{-1} . b) S((a_2)_0), b split into homogeneous words."""
    a._check(b)
    V = a.V
    F = V.field
    out = NcPolynomial.zero(V)
    if not a or not b:
        return out
    delta = braided_coproduct(a)
    for wb, cb in b.terms.items():
        chi_b = V.chi_of(wb)
        bw = NcPolynomial._raw(V, {wb: cb})
        acc: Dict[Word, CycNumber] = {}
        for (l, r), c in delta.items():
            e = V.chi_exp(chi_b, V.g_of(r))
            coef = c * F.root(e)
            left = NcPolynomial._raw(V, {l: coef})
            term = left * bw * braided_antipode(NcPolynomial._raw(V, {r: F.one()}))
            for w, v in term.terms.items():
                prev = acc.get(w)
                v = v if prev is None else prev + v
                if v:
                    acc[w] = v
                else:
                    acc.pop(w, None)
        out = out + NcPolynomial._raw(V, acc)
    return out


def is_primitive(a: NcPolynomial) -> bool:
    delta = braided_coproduct(a)
    return not middle_terms(delta)


def middle_terms(delta: TensorDict) -> TensorDict:
    """Delta(r) - r (x) 1 - 1 (x) r: the terms with both tensor factors of positive degree."""
    return {k: v for k, v in delta.items() if k[0] and k[1]}


def qserre_element(V: BraidedVectorSpace, C: CartanData, i: int, j: int) -> NcPolynomial:
    """ad_sk(x_i)^(1 - a_ij)(x_j)."""
    n = V.dim
    if i == j:
        raise ValueError("q-Serre element needs i != j")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"indices ({i}, {j}) out of range for dimension {n}")
    return ad_sk(NcPolynomial.gen(V, i), 1 - C.matrix[i][j])(NcPolynomial.gen(V, j))


# --------------------------------------------------------------------------
# q-combinatorics
# --------------------------------------------------------------------------

def qbinomial(k: int, j: int, q: CycNumber) -> CycNumber:
    """Gaussian binomial [k choose j]_q via the q-Pascal rule (safe at roots of unity)."""
    if not 0 <= j <= k:
        raise ValueError(f"need 0 <= j <= k, got k={k}, j={j}")
    return _qbinom_table(k, q)[j]


def _qbinom_table(k: int, q: CycNumber) -> List[CycNumber]:
    one = q.field.one()
    row = [one]
    for kk in range(1, k + 1):
        new = [one] * (kk + 1)
        for jj in range(1, kk):
            new[jj] = row[jj - 1] + q ** jj * row[jj]
        row = new
    return row


def skew_power_expand(m: int, residue: int, zeta: CycNumber) -> List[CycNumber]:
    """Coefficients (lambda_0..lambda_m) of c^(m-l) a c^l in [c, -]^m_sk(a).

    Computed in the free algebra on {c, a} over Z/n (n = ord(zeta)) where
    g acts on c by zeta^(n/m) and on a by zeta^residue.
    """
    F = zeta.field
    n = multiplicative_order(zeta)
    if n is None or n % m:
        raise ValueError(f"zeta must have finite order divisible by m={m}")
    s = n // m
    k0 = next(k for k in range(n) if F.root_of_unity(n, k) == zeta) if F.order % n == 0 else None
    if k0 is None:
        raise ValueError("zeta must be a power of the ambient root of unity")
    G = FinAbGroup([n])
    # characters are expressed through the standard generator zeta_n = zeta^(1/k0)
    V = BraidedVectorSpace(G, [("c", (1,), ((k0 * s) % n,)), ("a", (0,), ((k0 * residue) % n,))], field=F)
    c = NcPolynomial.gen(V, 0)
    x = NcPolynomial.gen(V, 1)
    expr = ad_sk(c, m)(x)
    out = []
    for l in range(m + 1):
        w = (0,) * (m - l) + (1,) + (0,) * l
        out.append(expr.terms.get(w, F.zero()))
    stray = set(expr.terms) - {(0,) * (m - l) + (1,) + (0,) * l for l in range(m + 1)}
    assert not stray, "expansion produced words outside c^(m-l) a c^l"
    return out


# --------------------------------------------------------------------------
# Coideal check for relation sets
# --------------------------------------------------------------------------

def subalgebra_span_degree(relations: Sequence[NcPolynomial], d: int, cache: Optional[dict] = None):
    """Echelon basis of the degree-d part of the unital subalgebra generated by ``relations``."""
    from .linalg import EchelonBasis

    if cache is None:
        cache = {}
    if d in cache:
        return cache[d]
    eb = EchelonBasis()
    products: List[NcPolynomial] = []
    if d == 0:
        products = [NcPolynomial.one(relations[0].V)] if relations else []
    else:
        for r in relations:
            k = r.max_degree()
            if 0 < k <= d:
                rest = subalgebra_span_degree(relations, d - k, cache)
                for v in rest.basis_vectors():
                    products.append(r * NcPolynomial._raw(r.V, dict(v)))
    for p in products:
        eb.add(dict(p.terms))
    cache[d] = eb
    return eb


def coideal_verdicts(relations: Sequence[NcPolynomial], D: int) -> Dict[int, bool]:
    """Per relation: do the left factors of Delta(r) - r(x)1 - 1(x)r lie in the subalgebra generated by the relations?"""
    if not relations:
        return {}
    for r in relations:
        if not r.is_homogeneous():
            raise NotHomogeneous(f"relation {r} is not homogeneous")
    top = max(r.max_degree() for r in relations)
    if D < top:
        raise ValueError(f"cutoff D={D} is below the top relation degree {top}")
    V = relations[0].V
    cache: dict = {}
    verdict = {}
    for idx, r in enumerate(relations):
        mids = middle_terms(braided_coproduct(r))
        # group by right word: sum_k f_k (x) e_k with e_k distinct words
        by_right: Dict[Word, Dict[Word, CycNumber]] = {}
        for (l, rw), c in mids.items():
            by_right.setdefault(rw, {})[l] = c
        ok = True
        for rw, fterms in by_right.items():
            f = NcPolynomial._raw(V, fterms)
            d = f.max_degree()
            if not subalgebra_span_degree(relations, d, cache).contains(dict(f.terms)):
                ok = False
                break
        verdict[idx] = ok
    return verdict


def coideal_check(relations: Sequence[NcPolynomial], D: int) -> bool:
    """True iff every relation passes :func:`coideal_verdicts`."""
    return all(coideal_verdicts(relations, D).values())
