"""Z^n-gradation, lexicographic order and element statistics."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .algebra import BasisElement, Element

__all__ = [
    "Box",
    "degree_of",
    "decompose",
    "lex_cmp",
    "string_number",
    "lp",
    "is_homogeneous",
]

Degree = tuple[int, ...]


@dataclass(frozen=True)
class Box:
    """Truncation window: ``|a_r| <= upper`` and ``|i_r| <= lower`` for all r."""

    upper: int
    lower: int

    def __post_init__(self):
        if self.upper < 0 or self.lower < 0:
            raise ValueError(f"box bounds must be non-negative, got {self.upper},{self.lower}")

    def contains(self, b) -> bool:
        A, I = self.upper, self.lower
        return all(-A <= a <= A for a in b[0]) and all(-I <= i <= I for i in b[1])

    __contains__ = contains

    def contains_support(self, x: Element) -> bool:
        return all(self.contains(b) for b in x.terms)

    def basis(self, n: int, *, nonnegative_lower: bool = False) -> Iterator[BasisElement]:
        """All basis elements inside the box, lex-descending."""
        uppers = list(product(range(self.upper, -self.upper - 1, -1), repeat=n))
        low_lo = 0 if nonnegative_lower else -self.lower
        lowers = list(product(range(self.lower, low_lo - 1, -1), repeat=n))
        for a in uppers:
            for i in lowers:
                for k in range(n, 0, -1):
                    yield BasisElement(a, i, k)

    def size(self, n: int, *, nonnegative_lower: bool = False) -> int:
        width = self.lower + 1 if nonnegative_lower else 2 * self.lower + 1
        return (2 * self.upper + 1) ** n * width**n * n


def degree_of(b: BasisElement) -> Degree:
    return tuple(b[0])


def decompose(x: Element) -> list[tuple[Degree, Element]]:
    """Homogeneous components of ``x``, degrees lex-descending."""
    parts: dict[Degree, dict] = {}
    for b, c in x.terms.items():
        parts.setdefault(tuple(b[0]), {})[b] = c
    return [(d, Element._wrap(parts[d])) for d in sorted(parts, reverse=True)]


def is_homogeneous(x: Element) -> bool:
    return len({tuple(b[0]) for b in x.terms}) <= 1


def lex_cmp(b1: BasisElement, b2: BasisElement) -> int:
    """Compare ``(a, i, k)`` in Z^{2n+1}; returns -1, 0 or 1."""
    if len(b1[0]) != len(b2[0]):
        raise ValueError("cannot compare basis elements of different rank")
    t1 = (*b1[0], *b1[1], b1[2])
    t2 = (*b2[0], *b2[1], b2[2])
    return (t1 > t2) - (t1 < t2)


def string_number(x: Element) -> int:
    """Number of distinct degrees in the support (0 for the zero element)."""
    return len({tuple(b[0]) for b in x.terms})


def lp(x: Element) -> int:
    """Largest lower index over all terms and coordinates."""
    if not x:
        raise ValueError("lp is undefined on the zero element")
    return max(max(b[1]) for b in x.terms)
