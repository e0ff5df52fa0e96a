"""Exact scalars: cyclotomic numbers, rational function fields, extension towers.

Every scalar that shows up in the verification suites lives in one of

* :class:`CyclotomicField`: Q(zeta_N), elements are :class:`CycNumber`;
* :class:`RationalFunctionField`: Q(zeta_N)(u, v, ...) with named central
  indeterminates, elements are :class:`RationalFunction`;
* :class:`ExtensionTower`: iterated algebraic extensions of either of the
  above, elements are :class:`TowerElement`.

All values are immutable.  Mixing elements from different fields raises
:class:`FieldMismatch`; plain ``int`` and ``Fraction`` operands are coerced.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

__all__ = [
    "FieldMismatch",
    "ZeroDivisorDetected",
    "CyclotomicField",
    "CycNumber",
    "RationalFunctionField",
    "RationalFunction",
    "ExtensionTower",
    "TowerElement",
    "primitive_root_pair",
    "field_arith",
    "tower_extend",
    "tower_invert",
    "multiplicative_order",
]


class FieldMismatch(TypeError):
    """Operands belong to different fields."""


class ZeroDivisorDetected(ZeroDivisionError):
    """A nonzero tower element has no inverse: some level polynomial is reducible."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _totient(n: int) -> int:
    result, k, p = n, n, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def _int_poly_divexact(a: List[int], b: List[int]) -> List[int]:
    # coefficient lists, lowest degree first; b monic
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


# --------------------------------------------------------------------------
# Cyclotomic numbers
# --------------------------------------------------------------------------

class CyclotomicField:
    """The field Q(zeta_N) with zeta_N = exp(2 pi i / N).

    Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) as
    integer numerators over a common positive denominator.
    """

    _cache: Dict[int, "CyclotomicField"] = {}

    def __new__(cls, order: int):
        if order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {order}")
        # Q(zeta_N) = Q(zeta_2N) for odd N; keep them distinct anyway so that
        # "zetaN" strings stay meaningful.
        inst = cls._cache.get(order)
        if inst is None:
            inst = super().__new__(cls)
            inst._setup(order)
            cls._cache[order] = inst
        return inst

    def _setup(self, order: int) -> None:
        self.order = order
        self.degree = _totient(order)
        phi = self.degree
        poly = cyclotomic_polynomial(order)
        # powers zeta^k reduced modulo Phi_N for 0 <= k < N
        table = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(order):
            table.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(phi):
                    vec[j] -= top * poly[j]
        self._powers = tuple(table)
        self._zero = CycNumber._make(self, (0,) * phi, 1)
        self._one = CycNumber._make(self, table[0], 1)

    def __reduce__(self):
        return (CyclotomicField, (self.order,))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __eq__(self, other) -> bool:
        return self is other

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.order))

    def zero(self) -> "CycNumber":
        return self._zero

    def one(self) -> "CycNumber":
        return self._one

    def root(self, k: int = 1) -> "CycNumber":
        """zeta_N ** k."""
        return CycNumber._make(self, self._powers[k % self.order], 1)

    @property
    def zeta(self) -> "CycNumber":
        return self.root(1)

    def root_of_unity(self, n: int, k: int = 1) -> "CycNumber":
        """exp(2 pi i k / n) as an element of this field (requires n | N)."""
        if self.order % n:
            raise ValueError(f"Q(zeta_{self.order}) does not contain primitive {n}-th roots")
        return self.root(k * (self.order // n))

    def __call__(self, x) -> "CycNumber":
        if isinstance(x, CycNumber):
            if x.field is not self:
                raise FieldMismatch(f"{x!r} is not in {self!r}")
            return x
        if isinstance(x, int):
            return CycNumber._make(self, (x,) + (0,) * (self.degree - 1), 1)
        if isinstance(x, Fraction):
            return CycNumber(self, [x] + [0] * (self.degree - 1))
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def from_coeffs(self, coeffs: Sequence) -> "CycNumber":
        """Element with the given power-basis coefficients (any length; reduced)."""
        out = self.zero()
        for k, c in enumerate(coeffs):
            if c:
                out = out + self.root(k) * Fraction(c)
        return out


class CycNumber:
    """Element of Q(zeta_N), canonical modulo the N-th cyclotomic polynomial."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CyclotomicField, coeffs: Sequence):
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != field.degree:
            raise ValueError(f"expected {field.degree} coefficients, got {len(fr)}")
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        num = tuple(int(c * den) for c in fr)
        self._init(field, num, den)

    @classmethod
    def _make(cls, field, num, den) -> "CycNumber":
        obj = object.__new__(cls)
        obj._init(field, num, den)
        return obj

    def _init(self, field, num, den) -> None:
        if den != 1:
            g = den
            for c in num:
                g = gcd(g, c)
                if g == 1:
                    break
            if g != 1:
                num = tuple(c // g for c in num)
                den //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CycNumber is immutable")

    @property
    def order(self) -> int:
        return self.field.order

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> Optional["CycNumber"]:
        if isinstance(other, CycNumber):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except FieldMismatch:
            return False
        if o is None:
            return NotImplemented
        return self.den == o.den and self.num == o.num

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.field.order, self.num, self.den))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "CycNumber":
        return CycNumber._make(self.field, tuple(-c for c in self.num), self.den)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return CycNumber._make(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        d = _lcm(self.den, o.den)
        fa, fb = d // self.den, d // o.den
        return CycNumber._make(self.field, tuple(a * fa + b * fb for a, b in zip(self.num, o.num)), d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNumber._make(self.field, tuple(c * other for c in self.num), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        phi = F.degree
        a, b = self.num, o.num
        if phi == 1:
            return CycNumber._make(F, (a[0] * b[0],), self.den * o.den)
        nza = [(i, x) for i, x in enumerate(a) if x]
        nzb = [(j, y) for j, y in enumerate(b) if y]
        acc = [0] * (2 * phi - 1)
        for i, x in nza:
            for j, y in nzb:
                acc[i + j] += x * y
        res = acc[:phi]
        powers, N = F._powers, F.order
        for k in range(phi, 2 * phi - 1):
            c = acc[k]
            if c:
                vec = powers[k % N]
                for t in range(phi):
                    if vec[t]:
                        res[t] += c * vec[t]
        return CycNumber._make(F, tuple(res), self.den * o.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycNumber":
        """Image under the automorphism zeta -> zeta^k (k coprime to N)."""
        F = self.field
        if gcd(k, F.order) != 1:
            raise ValueError(f"{k} is not a unit modulo {F.order}")
        res = [0] * F.degree
        for i, c in enumerate(self.num):
            if c:
                vec = F._powers[(i * k) % F.order]
                for t in range(F.degree):
                    res[t] += c * vec[t]
        return CycNumber._make(F, tuple(res), self.den)

    def inverse(self) -> "CycNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        F = self.field
        if F.degree == 1:
            return F(Fraction(self.den, self.num[0]))
        # product of the nontrivial conjugates over the norm
        cofactor = F.one()
        for k in range(2, F.order):
            if gcd(k, F.order) == 1:
                cofactor = cofactor * self.galois(k)
        norm = self * cofactor
        assert norm.is_rational()
        return cofactor * Fraction(norm.den, norm.num[0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- display ----------------------------------------------------------
    def __str__(self) -> str:
        N = self.field.order
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            coef = Fraction(c, self.den)
            if k == 0:
                terms.append(str(coef))
                continue
            mono = f"zeta{N}" if k == 1 else f"zeta{N}^{k}"
            if coef == 1:
                terms.append(mono)
            elif coef == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{coef}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self) -> str:
        return f"CycNumber({self})"

    def root_exponent(self) -> Optional[int]:
        """k with self == zeta_N'^k for N' = lcm(2, N), or None if not a root of unity."""
        F = self.field
        if F.order % 2:
            # -zeta^k covers the odd-order roots of unity of order 2N
            for k in range(F.order):
                if self == F.root(k):
                    return 2 * k
                if self == -F.root(k):
                    return (2 * k + F.order) % (2 * F.order)
            return None
        for k in range(F.order):
            if self == F.root(k):
                return k
        return None


def multiplicative_order(x: CycNumber) -> Optional[int]:
    """Order of a root of unity in Q(zeta_N); None when x is not a root of unity."""
    F = x.field
    bound = F.order if F.order % 2 == 0 else 2 * F.order
    p = x
    for k in range(1, bound + 1):
        if p == 1:
            return k
        p = p * x
    return None


def primitive_root_pair(n: int, m: int, field: Optional[CyclotomicField] = None,
                        q: Optional[CycNumber] = None) -> Tuple[CycNumber, CycNumber]:
    """A primitive n-th root zeta and q = zeta^(n/m), a primitive m-th root.

    ``zeta`` is ``zeta_N^((N/n) k)`` for the least k coprime to n; when ``q`` is
    prescribed the least such k with ``zeta^(n/m) == q`` is taken.
    """
    if n < 1 or m < 1 or n % m:
        raise ValueError(f"m={m} must divide n={n}")
    F = field if field is not None else CyclotomicField(n)
    if F.order % n:
        raise ValueError(f"{F!r} does not contain primitive {n}-th roots of unity")
    s = n // m
    for k in range(1, n + 1):
        if gcd(k, n) != 1:
            continue
        zeta = F.root_of_unity(n, k)
        qq = zeta ** s
        if q is None or qq == q:
            return zeta, qq
    raise ValueError(f"no primitive {n}-th root of unity has {s}-th power {q}")


def field_arith(op: str, a, b=None):
    """Dispatch helper: op in {add, mul, inv, pow, eq}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown field operation {op!r}")


# --------------------------------------------------------------------------
# Polynomials and rational functions over Q(zeta_N)
# --------------------------------------------------------------------------

Exp = Tuple[int, ...]
PolyDict = Dict[Exp, CycNumber]


def _padd(a: PolyDict, b: PolyDict, sign: int = 1) -> PolyDict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        v = (c if sign > 0 else -c) if v is None else (v + c if sign > 0 else v - c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul(a: PolyDict, b: PolyDict) -> PolyDict:
    if len(a) == 1 and len(b) == 1:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        c = ca * cb
        return {tuple(x + y for x, y in zip(ea, eb)): c} if c else {}
    out: PolyDict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e)
            v = ca * cb if v is None else v + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _pscale(a: PolyDict, c) -> PolyDict:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def _lead(a: PolyDict) -> Exp:
    return max(a, key=lambda e: (sum(e), e))


def _uni_divmod(a: PolyDict, b: PolyDict) -> Tuple[PolyDict, PolyDict]:
    db = max(e[0] for e in b)
    lb_inv = b[(db,)].inverse()
    q: PolyDict = {}
    r = dict(a)
    while r:
        dr = max(e[0] for e in r)
        if dr < db:
            break
        c = r[(dr,)] * lb_inv
        term = {(dr - db,): c}
        q = _padd(q, term)
        r = _padd(r, _pmul(term, b), -1)
    return q, r


def _uni_gcd(a: PolyDict, b: PolyDict) -> PolyDict:
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    return _pscale(a, a[_lead(a)].inverse())


class RationalFunctionField:
    """Q(zeta_N)(x_1, ..., x_k) with named central indeterminates."""

    _cache: Dict[Tuple[int, Tuple[str, ...]], "RationalFunctionField"] = {}

    def __new__(cls, base: CyclotomicField, names: Sequence[str]):
        key = (base.order, tuple(names))
        inst = cls._cache.get(key)
        if inst is None:
            if len(set(names)) != len(names) or not names:
                raise ValueError(f"bad indeterminate names {names!r}")
            inst = super().__new__(cls)
            inst.base = base
            inst.names = tuple(names)
            inst._nvars = len(names)
            inst._zero_exp = (0,) * len(names)
            cls._cache[key] = inst
        return inst

    def __reduce__(self):
        return (RationalFunctionField, (self.base, self.names))

    def __repr__(self) -> str:
        return f"RationalFunctionField(Q(zeta{self.base.order}), {', '.join(self.names)})"

    def zero(self) -> "RationalFunction":
        return RationalFunction._make(self, {}, {self._zero_exp: self.base.one()})

    def one(self) -> "RationalFunction":
        return self(1)

    def gen(self, name: str) -> "RationalFunction":
        i = self.names.index(name)
        e = tuple(1 if j == i else 0 for j in range(self._nvars))
        return RationalFunction._make(self, {e: self.base.one()}, {self._zero_exp: self.base.one()})

    def __call__(self, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            if x.field is not self:
                raise FieldMismatch(f"{x!r} is not in {self!r}")
            return x
        c = self.base(x)
        num = {self._zero_exp: c} if c else {}
        return RationalFunction._make(self, num, {self._zero_exp: self.base.one()})


class RationalFunction:
    """num/den with polynomial numerator and denominator over Q(zeta_N).

    Canonical form: the denominator's leading coefficient is 1 and, in the
    univariate case, numerator and denominator are coprime.
    """

    __slots__ = ("field", "num", "den")

    @classmethod
    def _make(cls, field: RationalFunctionField, num: PolyDict, den: PolyDict, reduce: bool = False):
        obj = object.__new__(cls)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = {field._zero_exp: field.base.one()}
        elif reduce:
            if len(den) == 1 and field._zero_exp in den:
                c = den[field._zero_exp]
                if c != 1:
                    num = _pscale(num, c.inverse())
                    den = {field._zero_exp: field.base.one()}
            else:
                if field._nvars == 1:
                    g = _uni_gcd(num, den)
                    if len(g) > 1 or field._zero_exp not in g:
                        num, _ = _uni_divmod(num, g)
                        den, _ = _uni_divmod(den, g)
                lc = den[_lead(den)]
                if lc != 1:
                    inv = lc.inverse()
                    num, den = _pscale(num, inv), _pscale(den, inv)
        obj.field = field
        obj.num = num
        obj.den = den
        return obj

    def _is_poly(self) -> bool:
        return len(self.den) == 1 and self.field._zero_exp in self.den

    def _coerce(self, other) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction, CycNumber)):
            return self.field(other)
        return None

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except FieldMismatch:
            return False
        if o is None:
            return NotImplemented
        if self._is_poly() and o._is_poly():
            return self.num == o.num
        return not _padd(_pmul(self.num, o.den), _pmul(o.num, self.den), -1)

    __hash__ = None  # equality is by cross-multiplication

    def __neg__(self):
        return RationalFunction._make(self.field, {e: -c for e, c in self.num.items()}, self.den)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction._make(self.field, _padd(self.num, o.num), self.den, reduce=not self._is_poly())
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return RationalFunction._make(self.field, num, _pmul(self.den, o.den), reduce=True)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            c = self.field.base(other)
            return RationalFunction._make(self.field, _pscale(self.num, c), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._is_poly() and o._is_poly():
            return RationalFunction._make(self.field, _pmul(self.num, o.num), self.den)
        return RationalFunction._make(self.field, _pmul(self.num, o.num), _pmul(self.den, o.den), reduce=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction._make(self.field, self.den, self.num, reduce=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _poly_str(self, p: PolyDict) -> str:
        parts = []
        for e in sorted(p, key=lambda e: (-sum(e), tuple(-x for x in e))):
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.field.names, e) if k
            )
            c = p[e]
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if (" " in cs) else f"{cs}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __str__(self) -> str:
        if self._is_poly():
            return self._poly_str(self.num)
        return f"({self._poly_str(self.num)})/({self._poly_str(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


# --------------------------------------------------------------------------
# Extension towers
# --------------------------------------------------------------------------

class ExtensionTower:
    """base(a_1, ..., a_k) with a_i a root of a monic polynomial over the previous levels.

    Elements are sparse maps from reduced exponent vectors (e_1, ..., e_k),
    0 <= e_i < deg_i, to base-field coefficients.
    """

    def __init__(self, base, levels: Sequence[Tuple[str, Tuple]] = ()):
        self.base = base
        self.levels: Tuple[Tuple[str, Tuple], ...] = tuple(levels)
        self.names = tuple(name for name, _ in self.levels)
        self.degrees = tuple(len(coeffs) for _, coeffs in self.levels)
        self._mono_cache: Dict[Exp, Dict[Exp, object]] = {}
        self._basis: Optional[List[Exp]] = None

    def __repr__(self) -> str:
        return f"ExtensionTower({self.base!r}; {', '.join(self.names)})"

    @property
    def degree(self) -> int:
        d = 1
        for k in self.degrees:
            d *= k
        return d

    def basis(self) -> List[Exp]:
        if self._basis is None:
            exps: List[Exp] = [()]
            for d in self.degrees:
                exps = [e + (i,) for e in exps for i in range(d)]
            # sort so that the constant comes first
            self._basis = sorted(exps, key=lambda e: (sum(e), tuple(reversed(e))))
        return self._basis

    def zero(self) -> "TowerElement":
        return TowerElement(self, {})

    def one(self) -> "TowerElement":
        return TowerElement(self, {(0,) * len(self.levels): self.base.one()})

    def gen(self, name: str) -> "TowerElement":
        i = self.names.index(name)
        e = [0] * len(self.levels)
        e[i] = 1
        if self.degrees[i] == 1:
            return self.one() * self._lower_coeff(i, 0) * -1
        return TowerElement(self, {tuple(e): self.base.one()})

    def _lower_coeff(self, level: int, i: int) -> "TowerElement":
        c = self.levels[level][1][i]
        return self(c)

    def __call__(self, x) -> "TowerElement":
        if isinstance(x, TowerElement):
            if x.tower is self:
                return x
            k = len(x.tower.levels)
            if x.tower.levels != self.levels[:k] or x.tower.base is not self.base:
                raise FieldMismatch(f"{x.tower!r} is not a subtower of {self!r}")
            pad = (0,) * (len(self.levels) - k)
            return TowerElement(self, {e + pad: c for e, c in x.terms.items()})
        c = self.base(x)
        if not c:
            return self.zero()
        return TowerElement(self, {(0,) * len(self.levels): c})

    def _reduce_monomial(self, e: Exp) -> Dict[Exp, object]:
        hit = self._mono_cache.get(e)
        if hit is not None:
            return hit
        top = None
        for k in range(len(e) - 1, -1, -1):
            if e[k] >= self.degrees[k]:
                top = k
                break
        if top is None:
            out = {e: self.base.one()}
        else:
            d = self.degrees[top]
            rest = list(e)
            rest[top] -= d
            out = {}
            # x^d = -sum_i c_i x^i with c_i living on lower levels
            for i, ci in enumerate(self.levels[top][1]):
                ce = self(ci)
                for f, cf in ce.terms.items():
                    ex = list(rest)
                    for j, fj in enumerate(f):
                        ex[j] += fj
                    ex[top] += i
                    for g, cg in self._reduce_monomial(tuple(ex)).items():
                        v = -(cf * cg)
                        prev = out.get(g)
                        v = v if prev is None else prev + v
                        if v:
                            out[g] = v
                        else:
                            out.pop(g, None)
        self._mono_cache[e] = out
        return out

    def element(self, terms: Dict[Exp, object]) -> "TowerElement":
        clean = {}
        for e, c in terms.items():
            c = self.base(c)
            if c:
                clean[tuple(e)] = c
        return TowerElement(self, clean)

    def coordinates(self, a: "TowerElement") -> List:
        return [a.terms.get(e, self.base.zero()) for e in self.basis()]


class TowerElement:
    __slots__ = ("tower", "terms")

    def __init__(self, tower: ExtensionTower, terms: Dict[Exp, object]):
        self.tower = tower
        self.terms = terms

    def _coerce(self, other) -> Optional["TowerElement"]:
        if isinstance(other, TowerElement):
            if other.tower is self.tower:
                return other
            return self.tower(other)
        try:
            return self.tower(other)
        except (TypeError, FieldMismatch):
            return None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.terms.keys() != o.terms.keys():
            return False
        return all(self.terms[e] == o.terms[e] for e in self.terms)

    __hash__ = None

    def __neg__(self):
        return TowerElement(self.tower, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TowerElement(self.tower, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, TowerElement):
            try:
                c = self.tower.base(other)
            except (TypeError, FieldMismatch):
                return NotImplemented
            if not c:
                return self.tower.zero()
            return TowerElement(self.tower, {e: v * c for e, v in self.terms.items()})
        o = self._coerce(other)
        T = self.tower
        out: Dict[Exp, object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in o.terms.items():
                cab = ca * cb
                for g, cg in T._reduce_monomial(tuple(x + y for x, y in zip(ea, eb))).items():
                    v = cab * cg
                    prev = out.get(g)
                    v = v if prev is None else prev + v
                    if v:
                        out[g] = v
                    else:
                        out.pop(g, None)
        return TowerElement(T, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.tower.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TowerElement":
        return tower_invert(self.tower, self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join((n if k == 1 else f"{n}^{k}") for n, k in zip(self.tower.names, e) if k)
            cs = str(self.terms[e])
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TowerElement({self})"


def tower_extend(t: ExtensionTower, name: str, minpoly: Sequence) -> ExtensionTower:
    """Adjoin a root ``name`` of the monic polynomial ``minpoly`` (lowest degree first)."""
    if name in t.names:
        raise ValueError(f"generator name {name!r} already used in {t!r}")
    if len(minpoly) < 2:
        raise ValueError("minimal polynomial must have positive degree")
    lead = t(minpoly[-1])
    if lead != t.one():
        raise ValueError(f"minimal polynomial for {name!r} is not monic")
    coeffs = tuple(t(c) for c in minpoly[:-1])
    return ExtensionTower(t.base, t.levels + ((name, coeffs),))


def tower_invert(t: ExtensionTower, a: TowerElement):
    """a^{-1} by solving the linear system (multiplication by a) x = 1 over the base field.

    Raises :class:`ZeroDivisorDetected` when a is a nonzero zero divisor,
    which certifies that the tower is not a field.
    """
    from .linalg import solve

    a = t(a)
    if not a:
        raise ZeroDivisionError("inverse of zero")
    basis = t.basis()
    cols = []
    for e in basis:
        prod = a * TowerElement(t, {e: t.base.one()})
        cols.append(t.coordinates(prod))
    n = len(basis)
    matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
    rhs = t.coordinates(t.one())
    x = solve(matrix, rhs, t.base.zero())
    if x is None:
        raise ZeroDivisorDetected(f"{a} is a zero divisor: the tower {t!r} is not a field", witness=a)
    return t.element({e: c for e, c in zip(basis, x)})
