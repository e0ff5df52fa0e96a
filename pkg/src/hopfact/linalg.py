"""Exact linear algebra over any field whose elements support + - * / and bool().

Vectors are sparse dicts ``{key: coefficient}`` with no stored zeros; the
keys must be mutually comparable (or a ``key`` function supplied) because
pivots are chosen as the least key, which makes every basis deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vec = Dict[Hashable, object]


def vec_axpy(y: Vec, a, x: Vec) -> Vec:
    """y + a*x as a new dict."""
    out = dict(y)
    for k, v in x.items():
        t = a * v
        prev = out.get(k)
        t = t if prev is None else prev + t
        if t:
            out[k] = t
        else:
            out.pop(k, None)
    return out


def vec_iadd(y: Vec, x: Vec, a=None) -> None:
    """In place y += a*x (a defaults to 1)."""
    for k, v in x.items():
        t = v if a is None else a * v
        prev = y.get(k)
        t = t if prev is None else prev + t
        if t:
            y[k] = t
        else:
            y.pop(k, None)


def vec_scale(x: Vec, a) -> Vec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def vec_sum(parts: Iterable[Tuple[object, Vec]]) -> Vec:
    out: Vec = {}
    for a, x in parts:
        vec_iadd(out, x, a)
    return out


def vec_equal(x: Vec, y: Vec) -> bool:
    if x.keys() != y.keys():
        return False
    return all(x[k] == y[k] for k in x)


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace.

    Each stored row has pivot coefficient 1 at its least key; with ``track``
    every row also carries the combination of inserted vectors producing it,
    which is how kernels of linear maps are read off.
    """

    def __init__(self, key: Optional[Callable] = None, track: bool = False, one=1):
        self._key = key
        self.one = one
        self.track = track
        self.rows: Dict[Hashable, Tuple[Vec, Vec]] = {}
        self.kernel: List[Vec] = []
        self._count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def _min(self, keys):
        return min(keys, key=self._key) if self._key else min(keys)

    def reduce(self, v: Vec, combo: Optional[Vec] = None) -> Tuple[Vec, Optional[Vec]]:
        v = dict(v)
        rows = self.rows
        while True:
            cands = [k for k in v if k in rows]
            if not cands:
                return v, combo
            p = self._min(cands)
            c = v[p]
            row, rcombo = rows[p]
            vec_iadd(v, row, -c)
            if combo is not None:
                vec_iadd(combo, rcombo, -c)

    def contains(self, v: Vec) -> bool:
        r, _ = self.reduce(v)
        return not r

    def add(self, v: Vec, label: Hashable = None) -> bool:
        """Insert v; returns True when it enlarged the span."""
        idx = self._count if label is None else label
        self._count += 1
        combo = {idx: _one_like(v)} if self.track and v else ({} if self.track else None)
        if self.track and not v:
            # zero vector: a trivial kernel element
            self.kernel.append({idx: self.one})
            return False
        r, combo = self.reduce(v, combo)
        if not r:
            if self.track:
                self.kernel.append(combo)
            return False
        p = self._min(r.keys())
        inv = r[p].inverse() if hasattr(r[p], "inverse") else Fraction(1) / r[p]
        r = vec_scale(r, inv)
        if combo is not None:
            combo = vec_scale(combo, inv)
        self.rows[p] = (r, combo)
        return True

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows, key=self._key) if self._key else sorted(self.rows)

    def basis_vectors(self) -> List[Vec]:
        return [self.rows[p][0] for p in self.pivots()]


def _one_like(v: Vec):
    for c in v.values():
        return c * 0 + 1
    return 1


def span_rank(vectors: Iterable[Vec], key=None) -> int:
    eb = EchelonBasis(key=key)
    for v in vectors:
        eb.add(v)
    return len(eb)


def kernel_of_images(images: Sequence[Vec], key=None, one=1) -> List[Vec]:
    """Basis of {lambda : sum_i lambda_i images[i] = 0}, as dicts index -> coefficient."""
    eb = EchelonBasis(key=key, track=True, one=one)
    for i, v in enumerate(images):
        eb.add(v, label=i)
    out = []
    for combo in eb.kernel:
        clean = {k: c for k, c in combo.items() if c}
        if clean:
            out.append(clean)
    return out


def solve(matrix: Sequence[Sequence], rhs: Sequence, zero) -> Optional[List]:
    """One solution x of matrix @ x = rhs (dense), or None if inconsistent."""
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if n_rows else 0
    m = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    piv_cols = []
    r = 0
    for c in range(n_cols):
        p = None
        for i in range(r, n_rows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse() if hasattr(m[r][c], "inverse") else Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if m[i][n_cols]:
            return None
    x = [zero] * n_cols
    for i, c in enumerate(piv_cols):
        x[c] = m[i][n_cols]
    return x


def solve_sparse(columns: Sequence[Vec], target: Vec, key=None) -> Optional[Dict[int, object]]:
    """Coefficients lambda with sum_j lambda_j columns[j] == target, or None."""
    eb = EchelonBasis(key=key, track=True)
    for j, v in enumerate(columns):
        eb.add(v, label=j)
    r, combo = eb.reduce(target, {})
    if r:
        return None
    # combo expresses target - sum(...) = r = 0  => target = -combo
    return {k: -c for k, c in combo.items() if c}
