"""The generalized Witt algebra W(g_p, n).

A basis element ``(a|i)_k`` carries upper indices ``a`` in Z^n, lower
indices ``i`` in Z^n and a direction ``1 <= k <= n``.  It is realized as the
differential operator

    e^{g_1(a_1) x_1} ... e^{g_n(a_n) x_n} x_1^{i_1} ... x_n^{i_n} d/dx_k

where each ``g_p`` is the additive map ``a -> m_p * a``.  The bracket below is
the commutator of these vector fields; :func:`oracle_commutator` recomputes
it by composing operators, independently of :func:`bracket`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .scalars import ONE, ZERO, Rational, as_rational

__all__ = [
    "AlgebraConfig",
    "BasisElement",
    "Element",
    "FunctionTerm",
    "FunctionElement",
    "basis",
    "g_eval",
    "bracket",
    "bracket_basis",
    "apply_operator",
    "apply_element",
    "oracle_commutator",
]


@dataclass(frozen=True)
class AlgebraConfig:
    """Rank ``n`` and the slopes ``m_p = g_p(1)`` of the additive maps."""

    n: int
    slopes: tuple[Rational, ...]

    def __init__(self, n: int, slopes: Iterable | None = None):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"rank n must be a positive integer, got {n!r}")
        slopes = (1,) * n if slopes is None else tuple(slopes)
        if len(slopes) != n:
            raise ValueError(f"expected {n} slopes, got {len(slopes)}")
        slopes = tuple(as_rational(m) for m in slopes)
        for p, m in enumerate(slopes, start=1):
            if m == 0:
                raise ValueError(
                    f"slope m_{p} = 0 makes g_{p} non-injective; every g_p must be injective"
                )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "slopes", slopes)

    def g(self, p: int, a: int) -> Rational:
        return g_eval(self, p, a)

    def check_basis(self, b: BasisElement) -> None:
        if len(b.upper) != self.n or len(b.lower) != self.n:
            raise ValueError(f"{b} does not have rank {self.n}")
        if not 1 <= b.dir <= self.n:
            raise ValueError(f"direction {b.dir} out of range 1..{self.n}")


def g_eval(cfg: AlgebraConfig, p: int, a: int) -> Rational:
    if not 1 <= p <= cfg.n:
        raise IndexError(f"map index {p} out of range 1..{cfg.n}")
    return cfg.slopes[p - 1] * a


class BasisElement(NamedTuple):
    """``(a|i)_k``.  Tuple comparison is the lexicographic order on Z^{2n+1}."""

    upper: tuple[int, ...]
    lower: tuple[int, ...]
    dir: int

    def __str__(self) -> str:
        return f"({_ints(self.upper)}|{_ints(self.lower)})_{self.dir}"

    @property
    def n(self) -> int:
        return len(self.upper)


class FunctionTerm(NamedTuple):
    """The monomial ``e^{g(a) x} x^i`` of F[e^{+-x}, x]; no direction index."""

    upper: tuple[int, ...]
    lower: tuple[int, ...]

    def __str__(self) -> str:
        return f"({_ints(self.upper)}|{_ints(self.lower)})"


def _ints(v: Sequence[int]) -> str:
    return ",".join(str(x) for x in v)


def _tup(v) -> tuple[int, ...]:
    if isinstance(v, int):
        return (v,)
    return tuple(int(x) for x in v)


def basis(upper, lower, k: int = 1) -> BasisElement:
    """Build ``(upper|lower)_k``; bare ints are accepted for rank one."""
    upper, lower = _tup(upper), _tup(lower)
    if len(upper) != len(lower):
        raise ValueError("upper and lower index vectors differ in length")
    return BasisElement(upper, lower, int(k))


class Element:
    """A finitely supported exact linear combination of basis keys.

    Zero coefficients are never stored, so equality is equality of term
    maps.  Instances are treated as immutable; arithmetic returns new ones.
    Iteration yields ``(key, coefficient)`` pairs in lex-descending order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                c = as_rational(c)
                if c:
                    nv = acc.get(key, 0) + c
                    if nv:
                        acc[key] = nv
                    else:
                        del acc[key]
        self._terms = acc

    @classmethod
    def _wrap(cls, terms: dict) -> Element:
        # terms must already be canonical and not shared with a caller
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def of(cls, key, coeff=1) -> Element:
        return cls({key: coeff})

    @property
    def terms(self) -> Mapping:
        return self._terms

    def coeff(self, key) -> Rational:
        return self._terms.get(key, ZERO)

    def support(self) -> list:
        return sorted(self._terms, reverse=True)

    def leading(self):
        """Lex-greatest key of the support."""
        if not self._terms:
            raise ValueError("zero element has no leading term")
        return max(self._terms)

    def __iter__(self) -> Iterator:
        for key in sorted(self._terms, reverse=True):
            yield key, self._terms[key]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _combine(self, other: Element, sign: int) -> Element:
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        acc = dict(self._terms)
        for key, c in other._terms.items():
            nv = acc.get(key, 0) + sign * c
            if nv:
                acc[key] = nv
            else:
                acc.pop(key, None)
        return type(self)._wrap(acc)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self) -> Element:
        return type(self)._wrap({k: -c for k, c in self._terms.items()})

    def __mul__(self, scalar) -> Element:
        try:
            s = as_rational(scalar)
        except TypeError:
            return NotImplemented
        if not s:
            return type(self)._wrap({})
        return type(self)._wrap({k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        from .syntax import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class FunctionElement(Element):
    """A member of F[e^{+-x}, x], keyed by :class:`FunctionTerm`."""

    __slots__ = ()


def _accumulate(acc: dict, key, c) -> None:
    nv = acc.get(key, 0) + c
    if nv:
        acc[key] = nv
    else:
        del acc[key]


def _bracket_into(acc: dict, slopes, X: BasisElement, Y: BasisElement, scale) -> None:
    a, i, k = X
    b, j, l = Y
    up = tuple(p + q for p, q in zip(a, b))
    low = tuple(p + q for p, q in zip(i, j))
    k0, l0 = k - 1, l - 1
    c1 = slopes[k0] * b[k0]
    c2 = j[k0]
    c3 = slopes[l0] * a[l0]
    c4 = i[l0]
    if c1:
        _accumulate(acc, (up, low, l), scale * c1)
    if c2:
        shifted = low[:k0] + (low[k0] - 1,) + low[k0 + 1 :]
        _accumulate(acc, (up, shifted, l), scale * c2)
    if c3:
        _accumulate(acc, (up, low, k), -scale * c3)
    if c4:
        shifted = low[:l0] + (low[l0] - 1,) + low[l0 + 1 :]
        _accumulate(acc, (up, shifted, k), -scale * c4)


def bracket_basis(cfg: AlgebraConfig, X: BasisElement, Y: BasisElement) -> Element:
    """Bracket of two basis elements.

    ``[(a|i)_k, (b|j)_l] = g_k(b_k)(a+b|i+j)_l + j_k(a+b|i+j-e_k)_l
    - g_l(a_l)(a+b|i+j)_k - i_l(a+b|i+j-e_l)_k``.
    """
    cfg.check_basis(X)
    cfg.check_basis(Y)
    acc: dict = {}
    _bracket_into(acc, cfg.slopes, X, Y, ONE)
    return Element._wrap({BasisElement(*key): c for key, c in acc.items()})


def bracket(cfg: AlgebraConfig, x: Element, y: Element) -> Element:
    """Bilinear extension of :func:`bracket_basis`."""
    if isinstance(x, tuple):
        x = Element.of(x)
    if isinstance(y, tuple):
        y = Element.of(y)
    n = cfg.n
    for X in x.terms:
        if len(X[0]) != n:
            raise ValueError(f"{X} does not belong to a rank-{n} algebra")
    for Y in y.terms:
        if len(Y[0]) != n:
            raise ValueError(f"{Y} does not belong to a rank-{n} algebra")
    acc: dict = {}
    slopes = cfg.slopes
    for X, cx in x.terms.items():
        for Y, cy in y.terms.items():
            _bracket_into(acc, slopes, X, Y, cx * cy)
    return Element._wrap({BasisElement(*key): c for key, c in acc.items()})


def apply_operator(cfg: AlgebraConfig, x: BasisElement, f: FunctionTerm) -> FunctionElement:
    """Act with ``(a|i)_k`` on the monomial ``f = (b|j)`` by the product rule."""
    a, i, k = x
    b, j = f
    k0 = k - 1
    up = tuple(p + q for p, q in zip(a, b))
    low = tuple(p + q for p, q in zip(i, j))
    acc: dict = {}
    c1 = cfg.slopes[k0] * b[k0]
    if c1:
        _accumulate(acc, FunctionTerm(up, low), c1)
    if j[k0]:
        shifted = low[:k0] + (low[k0] - 1,) + low[k0 + 1 :]
        _accumulate(acc, FunctionTerm(up, shifted), Rational(j[k0]))
    return FunctionElement._wrap(acc)


def apply_element(cfg: AlgebraConfig, x: Element, f: Element) -> FunctionElement:
    """Bilinear extension of :func:`apply_operator` to elements and functions."""
    if isinstance(f, tuple):
        f = FunctionElement.of(FunctionTerm(*f))
    acc: dict = {}
    for X, cx in x.terms.items():
        for F, cf in f.terms.items():
            for key, c in apply_operator(cfg, X, F).terms.items():
                _accumulate(acc, key, cx * cf * c)
    return FunctionElement._wrap(acc)


def oracle_commutator(cfg: AlgebraConfig, x: Element, y: Element, f) -> FunctionElement:
    """``X(Y(f)) - Y(X(f))`` computed only through operator application."""
    if isinstance(f, tuple):
        f = FunctionElement.of(FunctionTerm(*f))
    return apply_element(cfg, x, apply_element(cfg, y, f)) - apply_element(
        cfg, y, apply_element(cfg, x, f)
    )
