"""The coefficients omega_l of the m-fold skew commutator [c, -]^m_sk.

With q of order m, [c, -]^m_sk(a) = sum_l (-1)^l zeta^(l|a|) omega_l c^(m-l) a c^l,
where omega_l is the elementary symmetric function e_l(1, q, ..., q^(m-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import List, Optional

from ..exact_fields import CyclotomicField, CycNumber, multiplicative_order
from ..ncpoly import skew_power_expand
from ..report import ActionReport, timed


def omega_subset_sum(m: int, q: CycNumber) -> List[CycNumber]:
    """omega_l = sum over l-subsets I of {0..m-1} of q^(sum I)."""
    F = q.field
    out = []
    for l in range(m + 1):
        tot = F.zero()
        for I in combinations(range(m), l):
            tot = tot + q ** sum(I)
        out.append(tot)
    return out


def omega_recursion(m: int, q: CycNumber) -> List[CycNumber]:
    """omega_l = (1/l) sum_j q^j omega_(l-1)(j) where omega_l(j) = omega_l - q^j omega_(l-1)(j), omega_0(j) = 1.

    omega_l(j) is the part of omega_l whose subsets avoid j.
    """
    F = q.field
    pw = [q ** j for j in range(m)]
    omega = [F.one()]
    part = [F.one() for _ in range(m)]  # omega_(l-1)(j)
    for l in range(1, m + 1):
        tot = F.zero()
        for j in range(m):
            tot = tot + pw[j] * part[j]
        w = tot * F(Fraction(1, l))
        part = [w - pw[j] * part[j] for j in range(m)]
        omega.append(w)
    return omega


@dataclass
class OmegaTable:
    m: int
    q: CycNumber
    subset_sum: List[CycNumber]
    recursion: List[CycNumber]

    @property
    def consistent(self) -> bool:
        return self.subset_sum == self.recursion

    @property
    def values(self) -> List[CycNumber]:
        return self.subset_sum

    def interior_vanishes(self) -> bool:
        return all(not w for w in self.subset_sum[1:self.m])

    def top_value(self) -> CycNumber:
        return self.q ** (self.m * (self.m - 1) // 2)


def omega_table(m: int, q: CycNumber) -> OmegaTable:
    return OmegaTable(m, q, omega_subset_sum(m, q), omega_recursion(m, q))


def two_term_coefficients(m: int, residue: int, zeta: CycNumber, q: CycNumber) -> List[CycNumber]:
    """(1, 0, ..., 0, (-1)^m zeta^(m r) q^(m(m-1)/2))."""
    F = zeta.field
    top = (-1) ** m * zeta ** (m * residue) * q ** (m * (m - 1) // 2)
    return [F.one()] + [F.zero()] * (m - 1) + [top]


def skew_power_certificate(n: int, m: int, zeta: Optional[CycNumber] = None) -> ActionReport:
    """Omega table by both formulas and the two-term form of [c, -]^m_sk for every residue mod n."""
    if n < 1 or m < 1 or n % m:
        raise ValueError(f"m={m} must divide n={n}")
    if zeta is None:
        zeta = CyclotomicField(n).root_of_unity(n, 1)
    s = n // m
    q = zeta ** s
    if multiplicative_order(zeta) != n:
        raise ValueError(f"zeta must be a primitive {n}-th root of unity")
    table = omega_table(m, q)
    rep = ActionReport()

    def consistency():
        data = {"omega": [str(w) for w in table.subset_sum]}
        if not table.consistent:
            l = next(l for l in range(m + 1) if table.subset_sum[l] != table.recursion[l])
            return False, {"l": l, "subset_sum": str(table.subset_sum[l]), "recursion": str(table.recursion[l])}, data
        return True, None, data
    rep.add(timed("omega_formulas_agree", consistency))

    def interior():
        for l in range(1, m):
            if table.subset_sum[l]:
                return False, {"l": l, "omega": str(table.subset_sum[l])}, None
        return True, None, {"interior": list(range(1, m))}
    rep.add(timed("omega_interior_zero", interior))

    def top():
        ok = table.subset_sum[m] == table.top_value()
        w = None if ok else {"omega_m": str(table.subset_sum[m]), "expected": str(table.top_value())}
        return ok, w, {"omega_m": str(table.subset_sum[m])}
    rep.add(timed("omega_top", top))

    def expansion():
        for r in range(n):
            got = skew_power_expand(m, r, zeta)
            lam = [(-1) ** l * zeta ** (l * r) * table.subset_sum[l] for l in range(m + 1)]
            want = two_term_coefficients(m, r, zeta, q)
            if got != lam or got != want:
                return False, {"residue": r, "expansion": [str(x) for x in got], "two_term": [str(x) for x in want]}, None
        return True, None, {"residues": n}
    rep.add(timed("two_term_identity", expansion))
    return rep


def all_zetas(n: int, field: Optional[CyclotomicField] = None) -> List[CycNumber]:
    """Every primitive n-th root of unity, in order of exponent."""
    F = field or CyclotomicField(n)
    return [F.root_of_unity(n, k) for k in range(1, n + 1) if gcd(k, n) == 1]
