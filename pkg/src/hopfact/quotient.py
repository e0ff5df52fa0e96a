"""Finitely presented graded algebras, degree by degree, and PBW rewriting.

:class:`TruncatedAlgebra` computes A_d = TV_d / I_d for d <= D using the
recursion

    A_d = (A_{d-1} (x) V) / span{ b * r : r a relation of degree k, b a basis word of A_{d-k} }

which holds because I_d = I_{d-1} V + sum_k TV_{d-k} R_k.  Only quotient
dimensions are ever materialized; the free component TV_d never is.

:class:`RewriteSystem` is the normal-form backend for presentations with
a known confluent set of rules (quantum planes, quantum affine spaces and
their finite specializations).
"""

from __future__ import annotations

import os
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import EchelonBasis, vec_iadd
from .ncpoly import NcPolynomial, Word, format_terms

DEFAULT_MAX_WORDS = 10 ** 7


class DegreeOverflow(ValueError):
    pass


class CutoffTooSmall(ValueError):
    pass


class WordBudgetExceeded(ValueError):
    pass


class NonConfluent(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def max_words() -> int:
    raw = os.environ.get("HOPFACT_MAX_WORDS")
    return int(raw) if raw else DEFAULT_MAX_WORDS


def check_word_budget(theta: int, D: int) -> None:
    limit = max_words()
    if theta ** D > limit:
        raise WordBudgetExceeded(
            f"theta^D = {theta}^{D} exceeds the word budget {limit} (set HOPFACT_MAX_WORDS to override)")


def _terms_of(e) -> Dict[Word, object]:
    return e.terms if isinstance(e, NcPolynomial) else e


# --------------------------------------------------------------------------
# Presentations and degree truncations
# --------------------------------------------------------------------------

class Presentation:
    """Generators x_0..x_{theta-1} in degree 1 and homogeneous relations.

    Relations are NcPolynomials over ``V`` or raw ``{word: coeff}`` dicts
    with coefficients in ``scalars`` (which may be a rational function
    field when relations carry parameters).
    """

    def __init__(self, generators: Sequence[str], relations: Iterable = (), scalars=None, V=None):
        self.generators = list(generators)
        self.V = V
        if scalars is None:
            if V is None:
                raise ValueError("need a scalar field or a braided vector space")
            scalars = V.field
        self.scalars = scalars
        self.relations: List[Dict[Word, object]] = []
        for r in relations:
            terms = {tuple(w): scalars(c) for w, c in _terms_of(r).items()}
            terms = {w: c for w, c in terms.items() if c}
            if not terms:
                continue
            for w in terms:
                if any(not 0 <= i < len(self.generators) for i in w):
                    raise ValueError(f"relation word {w} uses an unknown generator")
            lengths = {len(w) for w in terms}
            if len(lengths) != 1:
                raise ValueError(f"relation {format_terms(terms, self.generators)} is not homogeneous in degree")
            if 0 in lengths:
                raise ValueError("a nonzero scalar relation collapses the algebra")
            if V is not None:
                bideg = {(V.g_of(w), V.chi_of(w)) for w in terms}
                if len(bideg) != 1:
                    raise ValueError(
                        f"relation {format_terms(terms, self.generators)} is not homogeneous in G x G^-degree")
            self.relations.append(terms)
        self._trunc: Optional[TruncatedAlgebra] = None

    @classmethod
    def from_braided(cls, V, relations: Iterable[NcPolynomial]) -> "Presentation":
        return cls(V.names, relations, V=V)

    @property
    def theta(self) -> int:
        return len(self.generators)

    def max_relation_degree(self) -> int:
        return max((len(next(iter(r))) for r in self.relations), default=0)

    def truncation(self, D: int) -> "TruncatedAlgebra":
        """Cached truncation at cutoff >= D."""
        if self._trunc is None or self._trunc.D < D:
            self._trunc = TruncatedAlgebra(self, D, check_cutoff=False)
        return self._trunc

    def __repr__(self) -> str:
        rels = ", ".join(format_terms(r, self.generators) for r in self.relations)
        return f"Presentation({self.generators}, [{rels}])"


def _lex_desc(w: Word) -> Tuple[int, ...]:
    return tuple(-i for i in w)


class TruncatedAlgebra:
    """A = T / (relations) in degrees 0..D with a monomial basis per degree.

    Basis words are the lexicographically smallest words spanning each
    component (larger words are eliminated first).  Elements are sparse
    dicts ``{basis word: coefficient}``.
    """

    def __init__(self, p: Presentation, D: int, check_cutoff: bool = True):
        if D < 0:
            raise CutoffTooSmall("cutoff must be nonnegative")
        if check_cutoff and D < p.max_relation_degree():
            raise CutoffTooSmall(f"cutoff {D} is below the top relation degree {p.max_relation_degree()}")
        self.presentation = p
        self.D = D
        self.scalars = p.scalars
        self.one_coeff = p.scalars(1)
        self._basis: List[List[Word]] = [[()]]
        # _mult[d][(b, i)] = image of b*x_i in A_d, b a basis word of degree d-1
        self._mult: List[Dict[Tuple[Word, int], Dict[Word, object]]] = [{}]
        self._pi: Dict[Word, Dict[Word, object]] = {(): {(): self.one_coeff}}
        by_degree: Dict[int, List[Dict[Word, object]]] = {}
        for r in p.relations:
            by_degree.setdefault(len(next(iter(r))), []).append(r)
        self._rels_by_degree = by_degree
        for d in range(1, D + 1):
            self._build_degree(d)

    def _build_degree(self, d: int) -> None:
        theta = self.presentation.theta
        prev = self._basis[d - 1]
        eb = EchelonBasis(key=_lex_desc)
        for k, rels in self._rels_by_degree.items():
            if k > d:
                continue
            for u in self._basis[d - k]:
                for r in rels:
                    vec: Dict[Word, object] = {}
                    for w, c in r.items():
                        head = self._pi_apply({u: self.one_coeff}, w[:-1], d - k)
                        last = (w[-1],)
                        for b, cb in head.items():
                            vec_iadd(vec, {b + last: cb * c})
                    if vec:
                        eb.add(vec)
        cands = [b + (i,) for b in prev for i in range(theta)]
        basis = sorted(w for w in cands if w not in eb.rows)
        table = {}
        for b in prev:
            for i in range(theta):
                w = b + (i,)
                table[(b, i)] = eb.reduce({w: self.one_coeff})[0] if w in eb.rows else {w: self.one_coeff}
        self._basis.append(basis)
        self._mult.append(table)

    def _right_mul(self, vec: Dict[Word, object], letter: int, deg: int) -> Dict[Word, object]:
        """vec in A_deg times x_letter, landing in A_{deg+1}."""
        table = self._mult[deg + 1]
        out: Dict[Word, object] = {}
        for b, c in vec.items():
            vec_iadd(out, table[(b, letter)], c)
        return out

    def _pi_apply(self, vec, letters: Sequence[int], deg: int) -> Dict[Word, object]:
        for i in letters:
            vec = self._right_mul(vec, i, deg)
            deg += 1
        return vec

    # -- public interface ---------------------------------------------------
    @property
    def dims(self) -> List[int]:
        return [len(b) for b in self._basis]

    def basis(self, d: int) -> List[Word]:
        if d > self.D:
            raise DegreeOverflow(f"degree {d} exceeds the cutoff {self.D}")
        return list(self._basis[d])

    def all_basis(self) -> List[Word]:
        return [w for b in self._basis for w in b]

    def total_dim(self) -> int:
        return sum(self.dims)

    def top_degree(self) -> int:
        return max(d for d, n in enumerate(self.dims) if n)

    def vanishing_degree(self) -> Optional[int]:
        """Least d <= D with A_d = 0 (then A_e = 0 for all e >= d), else None."""
        for d, n in enumerate(self.dims):
            if n == 0:
                return d
        return None

    def project_word(self, w: Word) -> Dict[Word, object]:
        w = tuple(w)
        if len(w) > self.D:
            raise DegreeOverflow(f"word of degree {len(w)} exceeds the cutoff {self.D}")
        hit = self._pi.get(w)
        if hit is None:
            hit = self._right_mul(self.project_word(w[:-1]), w[-1], len(w) - 1)
            self._pi[w] = hit
        return hit

    def reduce(self, e) -> Dict[Word, object]:
        """Normal form of a free-algebra element."""
        out: Dict[Word, object] = {}
        for w, c in _terms_of(e).items():
            vec_iadd(out, self.project_word(w), self.scalars(c))
        return out

    def mul(self, x: Dict[Word, object], y: Dict[Word, object]) -> Dict[Word, object]:
        out: Dict[Word, object] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if len(a) + len(b) > self.D:
                    raise DegreeOverflow(f"product of degree {len(a) + len(b)} exceeds the cutoff {self.D}")
                vec_iadd(out, self._pi_apply({a: self.one_coeff}, b, len(a)), ca * cb)
        return out

    def one(self) -> Dict[Word, object]:
        return {(): self.one_coeff}

    def gen(self, i: int) -> Dict[Word, object]:
        return self.project_word((i,))

    def degree_of(self, key: Word) -> int:
        return len(key)

    def fmt(self, x: Dict[Word, object]) -> str:
        return format_terms(x, self.presentation.generators)


def truncate(p: Presentation, D: int) -> TruncatedAlgebra:
    check_word_budget(max(p.theta, 1), D)
    return TruncatedAlgebra(p, D)


def dim_series(p: Presentation, D: int) -> List[int]:
    return truncate(p, D).dims


def ideal_member(p: Presentation, e, D: Optional[int] = None) -> bool:
    terms = _terms_of(e)
    if not terms:
        return True
    top = max(len(w) for w in terms)
    if D is not None and top > D:
        raise DegreeOverflow(f"element of degree {top} exceeds the cutoff {D}")
    return not p.truncation(top).reduce(terms)


def ideal_equal_upto(gens1: Sequence, gens2: Sequence, D: int, generators=None, scalars=None, V=None) -> bool:
    """Do the two-sided ideals generated by gens1 and gens2 agree in all degrees <= D?"""
    all_gens = [g for g in list(gens1) + list(gens2) if _terms_of(g)]
    top = max((max(len(w) for w in _terms_of(g)) for g in all_gens), default=0)
    if D < top:
        raise CutoffTooSmall(f"cutoff {D} is below the top generator degree {top}")
    if V is None:
        V = next((g.V for g in all_gens if isinstance(g, NcPolynomial)), None)
    if generators is None:
        generators = V.names
    p1 = Presentation(generators, gens1, scalars=scalars, V=V)
    p2 = Presentation(generators, gens2, scalars=scalars, V=V)
    return ideal_difference(p1, p2, D) is None and ideal_difference(p2, p1, D) is None


def ideal_difference(p: Presentation, q: Presentation, D: int):
    """A relation of p (of degree <= D) outside the ideal of q, or None."""
    top = max((len(next(iter(r))) for r in p.relations if len(next(iter(r))) <= D), default=0)
    q.truncation(top)
    for r in p.relations:
        if len(next(iter(r))) <= D and not ideal_member(q, r):
            return r
    return None


# --------------------------------------------------------------------------
# Rewriting
# --------------------------------------------------------------------------

def _deglex(w: Word) -> Tuple[int, Word]:
    return (len(w), w)


class RewriteSystem:
    """Rules lead -> tail with every tail word smaller than the lead in deg-lex order.

    Rules need not be homogeneous (c^2 -> 1 is fine); termination follows
    from the well-ordering of words by (length, lex).
    """

    def __init__(self, generators: Sequence[str], rules: Dict[Word, Dict[Word, object]], scalars,
                 check: bool = True):
        self.generators = list(generators)
        self.scalars = scalars
        self.one_coeff = scalars(1)
        self.rules: Dict[Word, Dict[Word, object]] = {}
        for lead, tail in rules.items():
            lead = tuple(lead)
            clean = {tuple(w): scalars(c) for w, c in tail.items()}
            clean = {w: c for w, c in clean.items() if c}
            for w in clean:
                if _deglex(w) >= _deglex(lead):
                    raise ValueError(f"rule {self.fmt_word(lead)} -> {self.fmt(clean)} does not decrease words")
            self.rules[lead] = clean
        self._leads = sorted(self.rules, key=_deglex)
        self._max_lead = max((len(l) for l in self._leads), default=0)
        self._nf_cache: Dict[Word, Dict[Word, object]] = {}
        if check:
            self.check_confluence()

    def fmt_word(self, w: Word) -> str:
        return format_terms({w: self.one_coeff}, self.generators)

    def fmt(self, x: Dict[Word, object]) -> str:
        return format_terms(x, self.generators)

    def _find(self, w: Word) -> Optional[Tuple[int, Word]]:
        n = len(w)
        for start in range(n):
            for k in range(1, min(self._max_lead, n - start) + 1):
                piece = w[start:start + k]
                if piece in self.rules:
                    return start, piece
        return None

    def is_normal(self, w: Word) -> bool:
        return self._find(tuple(w)) is None

    def normal_form_word(self, w: Word) -> Dict[Word, object]:
        w = tuple(w)
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        found = self._find(w)
        if found is None:
            out = {w: self.one_coeff}
        else:
            start, lead = found
            pre, post = w[:start], w[start + len(lead):]
            out = {}
            for t, c in self.rules[lead].items():
                vec_iadd(out, self.normal_form_word(pre + t + post), c)
        self._nf_cache[w] = out
        return out

    def normal_form(self, e) -> Dict[Word, object]:
        out: Dict[Word, object] = {}
        for w, c in _terms_of(e).items():
            vec_iadd(out, self.normal_form_word(w), self.scalars(c))
        return out

    def _one_step(self, w: Word, start: int, lead: Word) -> Dict[Word, object]:
        pre, post = w[:start], w[start + len(lead):]
        return {pre + t + post: c for t, c in self.rules[lead].items()}

    def ambiguities(self) -> List[Tuple[Word, int, Word, int, Word]]:
        """(word, start1, lead1, start2, lead2) for overlaps and inclusions of leads."""
        out = []
        for l1 in self._leads:
            for l2 in self._leads:
                # overlap: suffix of l1 equals prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        w = l1 + l2[k:]
                        out.append((w, 0, l1, len(l1) - k, l2))
                # inclusion: l2 strictly inside l1
                if l1 != l2 and len(l2) < len(l1):
                    for s in range(len(l1) - len(l2) + 1):
                        if l1[s:s + len(l2)] == l2:
                            out.append((l1, 0, l1, s, l2))
        return out

    def check_confluence(self) -> None:
        for w, s1, l1, s2, l2 in self.ambiguities():
            a = self.normal_form(self._one_step(w, s1, l1))
            b = self.normal_form(self._one_step(w, s2, l2))
            diff = dict(a)
            vec_iadd(diff, b, -self.one_coeff)
            if diff:
                raise NonConfluent(
                    f"ambiguity {self.fmt_word(w)} resolves to {self.fmt(a)} and {self.fmt(b)}",
                    witness={"word": self.fmt_word(w), "left": self.fmt(a), "right": self.fmt(b)})

    def is_confluent(self) -> bool:
        try:
            self.check_confluence()
        except NonConfluent:
            return False
        return True

    def normal_words(self, d: int) -> List[Word]:
        """Normal words of length d, generated by extending normal words of length d-1."""
        words: List[Word] = [()]
        for _ in range(d):
            words = [w + (i,) for w in words for i in range(len(self.generators)) if self.is_normal(w + (i,))]
        return words

    def hilbert_series(self, D: int) -> List[int]:
        return [len(self.normal_words(d)) for d in range(D + 1)]

    # algebra-model interface shared with TruncatedAlgebra
    def mul(self, x: Dict[Word, object], y: Dict[Word, object]) -> Dict[Word, object]:
        out: Dict[Word, object] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                vec_iadd(out, self.normal_form_word(a + b), ca * cb)
        return out

    def one(self) -> Dict[Word, object]:
        return {(): self.one_coeff}

    def gen(self, i: int) -> Dict[Word, object]:
        return self.normal_form_word((i,))

    def basis(self, d: int) -> List[Word]:
        return self.normal_words(d)

    def degree_of(self, key: Word) -> int:
        return len(key)

    def reduce(self, e) -> Dict[Word, object]:
        return self.normal_form(e)


def pbw_normal_form(rs: RewriteSystem, e):
    """Normal form of e; returns an NcPolynomial when given one."""
    nf = rs.normal_form(e)
    if isinstance(e, NcPolynomial):
        return NcPolynomial(e.V, nf)
    return nf


def skew_polynomial_system(names: Sequence[str], q: Sequence[Sequence], scalars, extra_rules=None,
                           check: bool = True) -> RewriteSystem:
    """x_j x_i -> q[i][j]^-1 x_i x_j for i < j: the algebra with x_i x_j = q_ij x_j x_i."""
    one = scalars(1)
    rules: Dict[Word, Dict[Word, object]] = {}
    n = len(names)
    for i in range(n):
        for j in range(i + 1, n):
            rules[(j, i)] = {(i, j): one / scalars(q[i][j])}
    for lead, tail in (extra_rules or {}).items():
        rules[tuple(lead)] = tail
    return RewriteSystem(names, rules, scalars, check=check)


def all_words(theta: int, d: int) -> List[Word]:
    return [tuple(w) for w in product(range(theta), repeat=d)]
