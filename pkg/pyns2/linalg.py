"""
Exact sparse linear algebra over the scalar tower.

Vectors are plain dicts from hashable keys to coefficients; zero
coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, TypeVar

from .exactfield import Number, Sign, exact_div, real_sign, simplify

K = TypeVar("K", bound=Hashable)
Vector = Dict[K, Number]


def add_scaled(
    target: Dict[K, Number], source: Mapping[K, Number], scale: Number = 1
) -> Dict[K, Number]:
    """target += scale * source, in place."""
    if not scale:
        return target
    for key, value in source.items():
        v = target.get(key, 0) + scale * value
        v = simplify(v)
        if v:
            target[key] = v
        else:
            target.pop(key, None)
    return target


def scaled(source: Mapping[K, Number], scale: Number) -> Dict[K, Number]:
    if not scale:
        return {}
    out: Dict[K, Number] = {}
    for key, value in source.items():
        v = simplify(scale * value)
        if v:
            out[key] = v
    return out


def combine(*pairs: tuple[Number, Mapping[K, Number]]) -> Dict[K, Number]:
    out: Dict[K, Number] = {}
    for scale, vec in pairs:
        add_scaled(out, vec, scale)
    return out


def difference(a: Mapping[K, Number], b: Mapping[K, Number]) -> Dict[K, Number]:
    return combine((1, a), (-1, b))


def dot(a: Mapping[K, Number], b: Mapping[K, Number]) -> Number:
    total: Number = 0
    if len(b) < len(a):
        a, b = b, a
    for key, value in a.items():
        other = b.get(key)
        if other:
            total = total + value * other
    return simplify(total)


class EchelonBasis:
    """
    Incremental row echelon form that remembers how each reduced row was
    made from the vectors fed to `add`, so membership tests also return
    coordinates.
    """

    def __init__(self) -> None:
        self.rows: List[tuple[Hashable, Dict[Hashable, Number], Dict[int, Number]]] = []
        self.count = 0

    def __len__(self) -> int:
        return self.count

    def reduce(
        self, vector: Mapping[Hashable, Number]
    ) -> tuple[Dict[Hashable, Number], Dict[int, Number]]:
        residual = dict(vector)
        coords: Dict[int, Number] = {}
        for pivot, row, combo in self.rows:
            a = residual.get(pivot)
            if a:
                add_scaled(residual, row, -a)
                add_scaled(coords, combo, a)
        return residual, coords

    def add(self, vector: Mapping[Hashable, Number]) -> Optional[Dict[int, Number]]:
        """
        Returns None and records the vector as basis element `count` when it is
        independent, else returns its coordinates on the recorded elements.
        """
        residual, coords = self.reduce(vector)
        if not residual:
            return coords
        pivot = next(iter(residual))
        lead = residual[pivot]
        combo: Dict[int, Number] = {self.count: 1}
        add_scaled(combo, coords, -1)
        inv = exact_div(1, lead)
        self.rows.append((pivot, scaled(residual, inv), scaled(combo, inv)))
        self.count += 1
        return None

    def express(self, vector: Mapping[Hashable, Number]) -> Dict[int, Number]:
        residual, coords = self.reduce(vector)
        if residual:
            raise ValueError("vector is not in the span")
        return coords

    def contains(self, vector: Mapping[Hashable, Number]) -> bool:
        residual, _ = self.reduce(vector)
        return not residual


def rank(vectors: Iterable[Mapping[Hashable, Number]]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def row_reduce(matrix: Sequence[Sequence[Number]]) -> tuple[List[List[Number]], List[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pick = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pick is None:
            continue
        rows[r], rows[pick] = rows[pick], rows[r]
        inv = exact_div(1, rows[r][col])
        rows[r] = [simplify(x * inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [simplify(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(matrix: Sequence[Sequence[Number]], ncols: Optional[int] = None) -> List[List[Number]]:
    """A basis of {x : matrix x = 0}, one vector per free column."""
    if not matrix:
        n = ncols or 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    reduced, pivots = row_reduce(matrix)
    n = len(matrix[0])
    free = [c for c in range(n) if c not in pivots]
    basis: List[List[Number]] = []
    for f in free:
        v: List[Number] = [0] * n
        v[f] = 1
        for row, p in zip(reduced, pivots):
            v[p] = simplify(-row[f])
        basis.append(v)
    return basis


def matrix_rank(matrix: Sequence[Sequence[Number]]) -> int:
    return len(row_reduce(matrix)[1])


def determinant(matrix: Sequence[Sequence[Number]]) -> Number:
    rows = [list(r) for r in matrix]
    n = len(rows)
    det: Number = Fraction(1)
    for col in range(n):
        pick = next((i for i in range(col, n) if rows[i][col]), None)
        if pick is None:
            return 0
        if pick != col:
            rows[col], rows[pick] = rows[pick], rows[col]
            det = -det
        pivot = rows[col][col]
        det = det * pivot
        for i in range(col + 1, n):
            if rows[i][col]:
                f = exact_div(rows[i][col], pivot)
                rows[i] = [simplify(a - f * b) for a, b in zip(rows[i], rows[col])]
    return simplify(det)


def is_positive_semidefinite(matrix: Sequence[Sequence[Number]]) -> bool:
    """
    Symmetric Gaussian elimination on diagonal pivots. A negative pivot
    fails; a zero pivot is only allowed when its whole row is zero.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    active = list(range(n))
    while active:
        for i in active:
            if not rows[i][i] and any(rows[i][j] for j in active):
                return False
        col = next((i for i in active if rows[i][i]), None)
        if col is None:
            return True
        pivot = rows[col][col]
        if real_sign(pivot) is not Sign.POSITIVE:
            return False
        active.remove(col)
        for i in active:
            if rows[i][col]:
                f = exact_div(rows[i][col], pivot)
                for j in active:
                    rows[i][j] = simplify(rows[i][j] - f * rows[col][j])
    return True
