"""Target algebras that are not plain presentations: tower automorphisms and the Ore extension L[t; sigma]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..exact_fields import (CyclotomicField, CycNumber, ExtensionTower, RationalFunctionField, TowerElement,
                            primitive_root_pair, tower_extend)
from ..linalg import EchelonBasis, vec_iadd

Exp = Tuple[int, ...]


class TowerAutomorphism:
    """A base-linear ring endomorphism of an extension tower, given by the images of its generators."""

    def __init__(self, tower: ExtensionTower, images: Sequence[TowerElement], name: str = "phi"):
        self.tower = tower
        self.images = tuple(tower(x) for x in images)
        self.name = name
        self._mono: Dict[Exp, TowerElement] = {}

    def _monomial(self, e: Exp) -> TowerElement:
        hit = self._mono.get(e)
        if hit is None:
            hit = self.tower.one()
            for img, k in zip(self.images, e):
                if k:
                    hit = hit * img ** k
            self._mono[e] = hit
        return hit

    def __call__(self, a: TowerElement) -> TowerElement:
        a = self.tower(a)
        out: Dict[Exp, object] = {}
        for e, c in a.terms.items():
            vec_iadd(out, self._monomial(e).terms, c)
        return TowerElement(self.tower, out)

    def compose(self, other: "TowerAutomorphism") -> "TowerAutomorphism":
        """self o other."""
        return TowerAutomorphism(self.tower, [self(x) for x in other.images], f"{self.name}{other.name}")

    def power(self, k: int) -> "TowerAutomorphism":
        out = identity_automorphism(self.tower)
        for _ in range(k):
            out = self.compose(out)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TowerAutomorphism) or other.tower is not self.tower:
            return NotImplemented
        return all(a == b for a, b in zip(self.images, other.images))

    __hash__ = None

    def key(self) -> Tuple:
        return tuple(tuple(sorted((e, str(c)) for e, c in x.terms.items())) for x in self.images)

    def defect(self) -> Optional[str]:
        """None when every defining polynomial is sent to zero, else a description of the first failure."""
        t = self.tower
        for level, (name, coeffs) in enumerate(t.levels):
            img = self.images[level]
            val = img ** len(coeffs)
            for k, c in enumerate(coeffs):
                val = val + self(t(c)) * img ** k
            if val:
                return f"the defining polynomial of {name} does not vanish at {img}"
        return None


def identity_automorphism(tower: ExtensionTower) -> TowerAutomorphism:
    gens = [tower.gen(name) for name in tower.names]
    return TowerAutomorphism(tower, gens, "id")


def automorphism_closure(gens: Sequence[TowerAutomorphism], limit: int = 10 ** 4) -> List[TowerAutomorphism]:
    """The group generated by ``gens`` (finite by assumption, enumerated breadth-first)."""
    if not gens:
        return []
    ident = identity_automorphism(gens[0].tower)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = g.compose(a)
                k = b.key()
                if k not in seen:
                    seen[k] = b
                    new.append(b)
                    if len(seen) > limit:
                        raise ValueError(f"automorphism group exceeds {limit} elements")
        frontier = new
    return list(seen.values())


def power_independence_degree(tower: ExtensionTower, theta: TowerElement) -> int:
    """Rank over the base of 1, theta, ..., theta^(deg-1); equals [L:K] iff theta has full degree."""
    eb = EchelonBasis()
    p = tower.one()
    for _ in range(tower.degree):
        eb.add(dict(p.terms))
        p = p * theta
    return len(eb)


# --------------------------------------------------------------------------
# Ore extension
# --------------------------------------------------------------------------

class OreExtension:
    """L[t; sigma]: elements sum_r b_r t^r, multiplied by (b t^r)(b' t^r') = b sigma^r(b') t^(r+r').

    Flat element form: ``{(r, e): k}`` with e a tower monomial and k in the
    base field, so that the linear algebra of the action checks applies.
    """

    def __init__(self, tower: ExtensionTower, sigma: TowerAutomorphism, sigma_order: int):
        self.tower = tower
        self.sigma = sigma
        self.sigma_order = sigma_order
        self.scalars = tower.base
        self.one_coeff = tower.base.one()
        self._powers: Dict[int, TowerAutomorphism] = {0: identity_automorphism(tower)}

    def sigma_power(self, r: int) -> TowerAutomorphism:
        r %= self.sigma_order
        if r not in self._powers:
            self._powers[r] = self.sigma.compose(self.sigma_power(r - 1))
        return self._powers[r]

    def element(self, b, r: int = 0) -> Dict:
        b = self.tower(b)
        return {(r, e): c for e, c in b.terms.items()}

    def t(self, r: int = 1) -> Dict:
        return self.element(self.tower.one(), r)

    def parts(self, x: Dict) -> Dict[int, TowerElement]:
        grouped: Dict[int, Dict] = {}
        for (r, e), c in x.items():
            grouped.setdefault(r, {})[e] = c
        return {r: TowerElement(self.tower, terms) for r, terms in grouped.items()}

    def mul(self, x: Dict, y: Dict) -> Dict:
        px, py = self.parts(x), self.parts(y)
        out: Dict = {}
        for r, b in px.items():
            sig = self.sigma_power(r)
            for r2, b2 in py.items():
                prod = b * sig(b2)
                for e, c in prod.terms.items():
                    vec_iadd(out, {(r + r2, e): c})
        return out

    def one(self) -> Dict:
        return self.element(self.tower.one(), 0)

    def basis(self, d: int) -> List[Tuple[int, Exp]]:
        return [(d, e) for e in self.tower.basis()]

    def degree_of(self, key) -> int:
        return key[0]

    def reduce(self, x: Dict) -> Dict:
        return x

    def fmt(self, x: Dict) -> str:
        if not x:
            return "0"
        parts = []
        for r, b in sorted(self.parts(x).items()):
            tr = "" if r == 0 else ("*t" if r == 1 else f"*t^{r}")
            parts.append(f"({b}){tr}")
        return " + ".join(parts)


@dataclass
class OreTower:
    n: int
    m: int
    s: int
    zeta: CycNumber
    q: CycNumber
    K: RationalFunctionField
    tower: ExtensionTower
    g: TowerAutomorphism
    g_i: List[TowerAutomorphism]
    sigma: TowerAutomorphism
    ore: OreExtension

    def c(self, j: int) -> TowerElement:
        return self.tower.gen(f"c{j}")

    @property
    def y(self) -> TowerElement:
        return self.tower.gen("y")

    def c_level(self, level: int) -> bool:
        return self.tower.names[level].startswith("c")


def build_ore_tower(n: int, m: int, zeta: Optional[CycNumber] = None) -> OreTower:
    """K = Q(zeta)(w); L = K(y, c_1..c_s) with y^s = w and c_j^m = zeta^(jm) y + 1."""
    if n < 1 or m < 1 or n % m:
        raise ValueError(f"m={m} must divide n={n}")
    s = n // m
    F = zeta.field if zeta is not None else CyclotomicField(n)
    if zeta is None:
        zeta, q = primitive_root_pair(n, m, F)
    else:
        q = zeta ** s
    K = RationalFunctionField(F, ["w"])
    w = K.gen("w")
    t = ExtensionTower(K)
    t = tower_extend(t, "y", [-w] + [0] * (s - 1) + [1])
    for j in range(1, s + 1):
        const = -(t.gen("y") * (zeta ** (j * m)) + 1)
        t = tower_extend(t, f"c{j}", [const] + [0] * (m - 1) + [1])
    y = t.gen("y")
    cs = [t.gen(f"c{j}") for j in range(1, s + 1)]
    g_i = []
    for i in range(s):
        g_i.append(TowerAutomorphism(t, [y] + [c * q if k == i else c for k, c in enumerate(cs)], f"g{i + 1}"))
    g = TowerAutomorphism(t, [y] + [c * q for c in cs], "g")
    sigma = TowerAutomorphism(t, [y * (zeta ** m)] + cs[1:] + cs[:1], "sigma")
    return OreTower(n, m, s, zeta, q, K, t, g, g_i, sigma, OreExtension(t, sigma, s))
