"""Independent oracles.

Everything here works over a prime field F_p with p = 1 mod N, where a
primitive N-th root of unity exists.  Reduction Z[zeta_N] -> F_p is a ring
map, so identities in Q(zeta_N) survive it and ranks can only drop; a prime
well above every coefficient keeps them generic.  None of this code shares
logic with the package.
"""

from __future__ import annotations

from itertools import combinations, product
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class ModRoots:
    """F_p together with a fixed primitive N-th root of unity ``z``."""

    def __init__(self, N: int, start: int = 1_000_003):
        p = start - start % N + 1
        while not is_prime(p):
            p += N
        self.p, self.N = p, N
        # find a primitive N-th root: an element whose order is exactly N
        for g in range(2, p):
            z = pow(g, (p - 1) // N, p)
            if all(pow(z, N // r, p) != 1 for r in _prime_factors(N)):
                self.z = z
                break

    def root(self, k: int) -> int:
        return pow(self.z, k % self.N, self.p)

    def inv(self, a: int) -> int:
        return pow(a % self.p, self.p - 2, self.p)

    def of(self, x) -> int:
        """Image of a CycNumber of Q(zeta_M), M | N, taking zeta_M to z^(N/M)."""
        M = x.field.order
        assert self.N % M == 0
        step = self.N // M
        num = sum(c * self.root(k * step) for k, c in enumerate(x.num)) % self.p
        return num * self.inv(x.den) % self.p


def _prime_factors(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def rank_mod_p(rows: Iterable[Dict], p: int) -> int:
    """Rank of sparse rows {column: value} over F_p."""
    pivots: Dict = {}
    for row in rows:
        r = {k: v % p for k, v in row.items() if v % p}
        while r:
            col = min(r)
            if col not in pivots:
                inv = pow(r[col], p - 2, p)
                pivots[col] = {k: v * inv % p for k, v in r.items()}
                break
            prow = pivots[col]
            f = r[col]
            for k, v in prow.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


# -- free algebra with diagonal braiding --------------------------------------

def words(theta: int, d: int) -> List[Tuple[int, ...]]:
    return list(product(range(theta), repeat=d))


def skew_commutator_mod(a: Dict, b: Dict, qexp, R: ModRoots) -> Dict:
    """[a, b] = a b - chi_b(g_a) b a for homogeneous a, b given as {word: int}; qexp(i, j) gives exponents of z."""
    wa, wb = next(iter(a)), next(iter(b))
    e = sum(qexp(i, j) for i in wa for j in wb)
    out: Dict = {}
    for u, cu in a.items():
        for v, cv in b.items():
            out[u + v] = (out.get(u + v, 0) + cu * cv) % R.p
            out[v + u] = (out.get(v + u, 0) - R.root(e) * cu * cv) % R.p
    return {k: v for k, v in out.items() if v}


def quotient_dims(theta: int, relations: Sequence[Dict], D: int, p: int) -> List[int]:
    """dim of (free algebra / ideal)_d for d <= D, with relations as {word: int mod p}."""
    dims = []
    for d in range(D + 1):
        rows = []
        for r in relations:
            k = len(next(iter(r)))
            if k > d:
                continue
            for left in range(d - k + 1):
                for u in words(theta, left):
                    for v in words(theta, d - k - left):
                        rows.append({u + w + v: c for w, c in r.items()})
        dims.append(theta ** d - rank_mod_p(rows, p))
    return dims


def in_ideal(theta: int, relations: Sequence[Dict], e: Dict, p: int) -> bool:
    d = len(next(iter(e)))
    rows = []
    for r in relations:
        k = len(next(iter(r)))
        if k > d:
            continue
        for left in range(d - k + 1):
            for u in words(theta, left):
                for v in words(theta, d - k - left):
                    rows.append({u + w + v: c for w, c in r.items()})
    return rank_mod_p(rows + [e], p) == rank_mod_p(rows, p)


# -- q-combinatorics -----------------------------------------------------------

def qbinomial_product(k: int, j: int, qexp: int, R: ModRoots) -> int:
    """[k choose j]_q as a polynomial in q (product formula over Z[q]), then evaluated at z^qexp."""
    # polynomial arithmetic on coefficient lists over Z
    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for t, y in enumerate(b):
                out[i + t] += x * y
        return out

    def qint(n):  # 1 - q^n
        return [1] + [0] * (n - 1) + [-1]

    num, den = [1], [1]
    for i in range(j):
        num = mul(num, qint(k - i))
        den = mul(den, qint(i + 1))
    # exact division num / den over Z[q]
    quot = [0] * (len(num) - len(den) + 1)
    num = list(num)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        quot[i] = c
        for t, y in enumerate(den):
            num[i + t] -= c * y
    assert not any(num)
    q = R.root(qexp)
    return sum(c * pow(q, i, R.p) for i, c in enumerate(quot)) % R.p


def omega_subsets_mod(m: int, qexp: int, R: ModRoots) -> List[int]:
    q = R.root(qexp)
    return [sum(pow(q, sum(I), R.p) for I in combinations(range(m), l)) % R.p for l in range(m + 1)]


def skew_power_mod(m: int, c_exp: int, a_exp: int, R: ModRoots) -> List[int]:
    """Coefficients of c^(m-l) a c^l in [c, -]^m(a), where g acts on c by z^c_exp and on a by z^a_exp."""
    # element: {l: coeff} meaning c^(m'-l) a c^l within degree m'
    cur = {0: 1}
    for step in range(m):
        new: Dict[int, int] = {}
        # [c, b] = c b - (g.b) c ; b = c^(step-l) a c^l has g-weight a_exp + step * c_exp
        scal = R.root(a_exp + step * c_exp)
        for l, v in cur.items():
            new[l] = (new.get(l, 0) + v) % R.p
            new[l + 1] = (new.get(l + 1, 0) - scal * v) % R.p
        cur = new
    return [cur.get(l, 0) for l in range(m + 1)]


# -- finite abelian groups -----------------------------------------------------

def subgroup_size(gens: Sequence[Tuple[int, ...]], orders: Sequence[int]) -> int:
    seen = {tuple(0 for _ in orders)}
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % n for a, b, n in zip(x, g, orders))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return len(seen)


def group_size(orders: Sequence[int]) -> int:
    out = 1
    for n in orders:
        out *= n
    return out


def quantum_plane_invariant_count(n: int, m: int, d: int) -> int:
    """#{c^i w^j : i + j = d, m | i, n | j}: x.(c^i w^j) = (1 - q^i) c^(i+1) w^j and g weight s i + j."""
    return sum(1 for i in range(d + 1) if i % m == 0 and (d - i) % n == 0)


def coprime_count(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
