"""Exact sparse row reduction over basis-keyed vectors."""

from __future__ import annotations

from typing import Iterable, Sequence

from .algebra import Element
from .scalars import ONE, ZERO, Rational, as_rational

__all__ = ["RowSpace", "reduce", "insert", "rref", "nullspace"]


class RowSpace:
    """Reduced echelon span of Elements.

    Each row is keyed by its pivot, the lex-greatest key of its support, and
    has pivot coefficient 1.  No row contains another row's pivot, so
    reduction against the space is a single pass over the vector's support.
    Rows are replaced (never mutated in place), so a row handed out earlier
    stays a valid snapshot.
    """

    def __init__(self, rows: Iterable[Element] = ()):
        self._rows: dict = {}
        # column key -> pivots of the rows holding a non-pivot entry there
        self._cols: dict = {}
        self._order: list = []
        for r in rows:
            self.insert(r)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return list(self._order)

    def row(self, pivot) -> Element:
        return Element._wrap(self._rows[pivot])

    def rows(self) -> list[Element]:
        """Rows in insertion order of their pivots."""
        return [Element._wrap(self._rows[p]) for p in self._order]

    def _reduce_terms(self, terms) -> dict:
        w = dict(terms)
        rows = self._rows
        hits = [key for key in w if key in rows]
        for p in hits:
            c = w[p]
            for key, val in rows[p].items():
                nv = w.get(key, 0) - c * val
                if nv:
                    w[key] = nv
                else:
                    del w[key]
        return w

    def reduce(self, v: Element) -> Element:
        return type(v)._wrap(self._reduce_terms(v.terms))

    def contains(self, v: Element) -> bool:
        return not self._reduce_terms(v.terms)

    __contains__ = contains

    def insert(self, v: Element) -> bool:
        w = self._reduce_terms(v.terms)
        if not w:
            return False
        pivot = max(w)
        lead = w[pivot]
        if lead != 1:
            inv = ONE / lead
            w = {key: val * inv for key, val in w.items()}
        cols = self._cols
        for holder in cols.pop(pivot, ()):
            old = self._rows[holder]
            c = old[pivot]
            new = dict(old)
            for key, val in w.items():
                nv = new.get(key, 0) - c * val
                if nv:
                    new[key] = nv
                    if key not in old:
                        cols.setdefault(key, set()).add(holder)
                else:
                    del new[key]
                    if key != pivot:
                        cols[key].discard(holder)
            self._rows[holder] = new
        for key in w:
            if key != pivot:
                cols.setdefault(key, set()).add(pivot)
        self._rows[pivot] = w
        self._order.append(pivot)
        return True


def reduce(v: Element, space: RowSpace) -> Element:
    return space.reduce(v)


def insert(v: Element, space: RowSpace) -> bool:
    return space.insert(v)


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Rational]], list[int]]:
    """Dense reduced row echelon form; returns (rows, pivot columns)."""
    m = [[as_rational(x) for x in row] for row in matrix]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        for s in range(r, n_rows):
            if m[s][c]:
                break
        else:
            continue
        m[r], m[s] = m[s], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for s in range(n_rows):
            if s != r and m[s][c]:
                f = m[s][c]
                m[s] = [x - f * y for x, y in zip(m[s], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def nullspace(matrix: Sequence[Sequence], n_cols: int | None = None) -> list[list[Rational]]:
    """Basis of ``{x : matrix @ x = 0}``, one vector per free column."""
    if n_cols is None:
        if not matrix:
            raise ValueError("n_cols is required for an empty matrix")
        n_cols = len(matrix[0])
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = [ZERO] * n_cols
        vec[free] = ONE
        for row, pc in zip(rows, pivots):
            vec[pc] = -row[free]
        basis.append(vec)
    return basis
