"""Finite abelian groups, characters, diagonal braidings and Cartan checks.

Group elements and characters are both plain integer tuples, reduced
componentwise modulo the invariant factors of the group.  A character
``chi`` pairs with ``g`` as ``prod_i exp(2 pi i chi_i g_i / n_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact_fields import CyclotomicField, CycNumber, multiplicative_order

Elem = Tuple[int, ...]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class FinAbGroup:
    """Z/n_1 x ... x Z/n_k in invariant-factor (or any cyclic-factor) form."""

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 1, got {orders}")
        self.orders = orders
        exp = 1
        for n in orders:
            exp = _lcm(exp, n)
        self.exponent = exp

    def __repr__(self) -> str:
        return f"FinAbGroup({list(self.orders)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbGroup) and self.orders == other.orders

    def __hash__(self) -> int:
        return hash(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def elem(self, v: Sequence[int]) -> Elem:
        if len(v) != len(self.orders):
            raise ValueError(f"{tuple(v)} does not have length {len(self.orders)}")
        return tuple(int(x) % n for x, n in zip(v, self.orders))

    def identity(self) -> Elem:
        return (0,) * len(self.orders)

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a: Elem) -> Elem:
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def mul(self, a: Elem, k: int) -> Elem:
        return tuple((x * k) % n for x, n in zip(a, self.orders))

    def sum(self, elems: Iterable[Elem]) -> Elem:
        out = self.identity()
        for e in elems:
            out = self.add(out, e)
        return out

    def elements(self) -> List[Elem]:
        return [tuple(v) for v in product(*(range(n) for n in self.orders))]

    def order_of(self, a: Elem) -> int:
        out = 1
        for x, n in zip(a, self.orders):
            out = _lcm(out, n // gcd(x, n))
        return out


def char_eval(chi: Elem, g: Elem, group: FinAbGroup,
              field: Optional[CyclotomicField] = None) -> CycNumber:
    """chi(g) as a root of unity of order dividing exp(G)."""
    if len(chi) != group.rank or len(g) != group.rank:
        raise ValueError("character / element dimension mismatch")
    F = field if field is not None else CyclotomicField(group.exponent)
    E = group.exponent
    if F.order % E:
        raise ValueError(f"{F!r} does not contain the exp(G)={E}-th roots of unity")
    k = 0
    for c, x, n in zip(chi, g, group.orders):
        k += c * x * (E // n)
    return F.root_of_unity(E, k % E)


def char_exponent(chi: Elem, g: Elem, group: FinAbGroup) -> int:
    """k with chi(g) = zeta_exp(G)^k."""
    E = group.exponent
    return sum(c * x * (E // n) for c, x, n in zip(chi, g, group.orders)) % E


def subgroup_closure(gens: Iterable[Elem], group: FinAbGroup) -> set:
    """Brute-force enumeration of the subgroup generated by ``gens``."""
    gens = [group.elem(g) for g in gens]
    seen = {group.identity()}
    frontier = [group.identity()]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group.add(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def _lattice_index(rows: List[List[int]], dim: int) -> int:
    """Index in Z^dim of the lattice spanned by ``rows`` (0 when not full rank)."""
    rows = [list(r) for r in rows if any(r)]
    det = 1
    for col in range(dim):
        # gcd-combine all rows below into one pivot row for this column
        piv = None
        for i, r in enumerate(rows):
            if r[col]:
                piv = i
                break
        if piv is None:
            return 0
        rows[0], rows[piv] = rows[piv], rows[0]
        changed = True
        while changed:
            changed = False
            for i in range(1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // rows[0][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[0])]
                    if rows[i][col]:
                        rows[0], rows[i] = rows[i], rows[0]
                        changed = True
        det *= abs(rows[0][col])
        rows = [r for r in rows[1:] if any(r)]
    return det


def subgroup_order(gens: Iterable[Elem], group: FinAbGroup) -> int:
    """|<gens>| via the index of the relation lattice (no enumeration)."""
    k = group.rank
    rows = [list(group.elem(g)) for g in gens]
    rows += [[n if i == j else 0 for j in range(k)] for i, n in enumerate(group.orders)]
    return group.size // _lattice_index(rows, k)


def generates_dual(chars: Iterable[Elem], group: FinAbGroup) -> bool:
    """True iff the characters generate the full character group G^."""
    return subgroup_order(list(chars), group) == group.size


# --------------------------------------------------------------------------
# Braided vector spaces of diagonal type
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    g: Elem
    chi: Elem


class BraidedVectorSpace:
    """Span of x_1..x_theta, x_i of G-degree g_i and character chi_i.

    ``field`` is the ambient cyclotomic field; its order must be a multiple
    of exp(G).
    """

    def __init__(self, group: FinAbGroup, generators: Sequence, field: Optional[CyclotomicField] = None):
        self.group = group
        gens = []
        for gen in generators:
            if isinstance(gen, Generator):
                name, g, chi = gen.name, gen.g, gen.chi
            else:
                name, g, chi = gen
            gens.append(Generator(str(name), group.elem(g), group.elem(chi)))
        names = [x.name for x in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names {names}")
        self.generators: Tuple[Generator, ...] = tuple(gens)
        self.field = field if field is not None else CyclotomicField(group.exponent)
        if self.field.order % group.exponent:
            raise ValueError(f"{self.field!r} is too small for exp(G)={group.exponent}")
        self._qe = [[self.chi_exp(b.chi, a.g) for b in gens] for a in gens]
        self._q = [[self.field.root(e) for e in row] for row in self._qe]

    def __repr__(self) -> str:
        return f"BraidedVectorSpace({self.group!r}, {[x.name for x in self.generators]})"

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> List[str]:
        return [x.name for x in self.generators]

    def q(self, i: int, j: int) -> CycNumber:
        """q_ij = chi_j(g_i)."""
        return self._q[i][j]

    def qexp(self, i: int, j: int) -> int:
        """k with q_ij = zeta_N^k, N the order of the ambient field."""
        return self._qe[i][j]

    def chi_exp(self, chi: Elem, g: Elem) -> int:
        """k with chi(g) = zeta_N^k."""
        return char_exponent(chi, g, self.group) * (self.field.order // self.group.exponent) % self.field.order

    def g_of(self, word: Sequence[int]) -> Elem:
        return self.group.sum(self.generators[i].g for i in word)

    def chi_of(self, word: Sequence[int]) -> Elem:
        return self.group.sum(self.generators[i].chi for i in word)

    def chi_at(self, chi: Elem, g: Elem) -> CycNumber:
        return char_eval(chi, g, self.group, self.field)


def braiding_matrix(V: BraidedVectorSpace) -> List[List[CycNumber]]:
    return [[V.q(i, j) for j in range(V.dim)] for i in range(V.dim)]


# --------------------------------------------------------------------------
# Cartan data
# --------------------------------------------------------------------------

@dataclass
class CartanData:
    """Generalized Cartan matrix with root-vector words for rank <= 2 components.

    A root word ``(i1, ..., ik)`` stands for ad_sk(x_i1) ... ad_sk(x_i(k-1)) (x_ik).
    """

    matrix: List[List[int]]
    orders: Optional[List[int]] = None
    root_words: Optional[List[Tuple[int, ...]]] = None

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("Cartan matrix must be square")
        self.matrix = [list(map(int, row)) for row in self.matrix]
        if self.root_words is None:
            self.root_words = default_root_words(self.matrix)
        self.root_words = [tuple(w) for w in self.root_words]

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def components(self) -> List[List[int]]:
        n = self.rank
        seen, comps = set(), []
        for s in range(n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if j not in seen and (self.matrix[i][j] or self.matrix[j][i]):
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def component_type(self, comp: Sequence[int]) -> str:
        if len(comp) == 1:
            return "A1"
        if len(comp) == 2:
            i, j = comp
            prod_ = self.matrix[i][j] * self.matrix[j][i]
            return {1: "A2", 2: "B2", 3: "G2"}.get(prod_, "rank2-nonfinite")
        return f"rank{len(comp)}"


def default_root_words(matrix: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Positive-root words for components of type A1 and A2 (others must be supplied)."""
    cd = CartanData.__new__(CartanData)
    cd.matrix = [list(r) for r in matrix]
    words: List[Tuple[int, ...]] = []
    for comp in cd.components():
        kind = cd.component_type(comp)
        if kind == "A1":
            words.append((comp[0],))
        elif kind == "A2":
            i, j = comp
            words += [(i,), (j,), (i, j)]
        else:
            raise ValueError(f"no built-in root words for a component of type {kind}; supply root_words")
    return words


def cartan_matrix_for(V: BraidedVectorSpace) -> Optional[List[List[int]]]:
    """The Cartan matrix with 0 <= -a_ij < ord(q_ii) realising V, or None."""
    n = V.dim
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        qii = V.q(i, i)
        N = multiplicative_order(qii)
        for j in range(n):
            if i == j:
                continue
            target = V.q(i, j) * V.q(j, i)
            for k in range(N):
                if qii ** (-k) == target:
                    a[i][j] = -k
                    break
            else:
                return None
    return a


def cartan_compatible(V: BraidedVectorSpace, C: CartanData, order_restrictions: bool = True) -> bool:
    """q_ij q_ji == q_ii^a_ij for all i != j, a_ii = 2, 0 <= -a_ij < ord(q_ii).

    With ``order_restrictions`` additionally require ord(q_ii) odd, and coprime
    to 3 on components of type G2.
    """
    return not cartan_violations(V, C, order_restrictions)


def cartan_violations(V: BraidedVectorSpace, C: CartanData, order_restrictions: bool = True) -> List[str]:
    n = V.dim
    if C.rank != n:
        return [f"Cartan matrix has size {C.rank}, braided space has dimension {n}"]
    out = []
    for i in range(n):
        qii = V.q(i, i)
        N = multiplicative_order(qii)
        if C.matrix[i][i] != 2:
            out.append(f"a_{i+1}{i+1} = {C.matrix[i][i]} != 2")
        if N is None:
            out.append(f"q_{i+1}{i+1} is not a root of unity")
            continue
        if order_restrictions and N % 2 == 0:
            out.append(f"ord(q_{i+1}{i+1}) = {N} is even")
        for j in range(n):
            if i == j:
                continue
            a = C.matrix[i][j]
            if not (0 <= -a < N):
                out.append(f"a_{i+1}{j+1} = {a} violates 0 <= -a_ij < ord(q_ii) = {N}")
            if V.q(i, j) * V.q(j, i) != qii ** a:
                out.append(f"q_ij q_ji = q_ii^a_ij fails at (i, j) = ({i+1}, {j+1})")
    if order_restrictions:
        for comp in C.components():
            if C.component_type(comp) == "G2":
                for i in comp:
                    N = multiplicative_order(V.q(i, i))
                    if N is not None and N % 3 == 0:
                        out.append(f"ord(q_{i+1}{i+1}) = {N} divisible by 3 in type G2")
    return out


def component_orders(V: BraidedVectorSpace, C: CartanData) -> Dict[int, int]:
    """N_i = ord(q_ii), checked constant along each connected component."""
    out = {}
    for comp in C.components():
        Ns = {multiplicative_order(V.q(i, i)) for i in comp}
        if len(Ns) != 1:
            raise ValueError(f"ord(q_ii) not constant on component {comp}: {Ns}")
        N = Ns.pop()
        for i in comp:
            out[i] = N
    return out
