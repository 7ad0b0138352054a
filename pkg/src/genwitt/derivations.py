"""Derivations of the subalgebra W(g,1)_+ (rank one, lower index >= 0).

Every derivation there is ``ad_G + c*ad_d + S`` where ``d = (0|0)_1`` acts
as d/dx, ``ad_G(x) = [G, x]`` and ``S`` is the scalar derivation
``(a|i)_1 -> s*a*(a|i)_1``.  Derivations are handled as finite tables over
a window of basis elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .algebra import (
    AlgebraConfig,
    BasisElement,
    Element,
    FunctionElement,
    FunctionTerm,
    bracket,
)
from .linalg import nullspace
from .scalars import ZERO, Rational, as_rational
from .structure import Box

__all__ = [
    "NotADerivation",
    "DerivationTable",
    "Decomposition",
    "PARTIAL",
    "in_bplus",
    "scalar_derivation",
    "inner_derivation",
    "tabulate",
    "differentiate",
    "integrate",
    "verify_derivation",
    "decompose",
    "recompose",
    "scalar_derivation_family",
    "parse_table",
    "format_table",
]

Rule = Callable[[BasisElement], Element]

PARTIAL = BasisElement((0,), (0,), 1)


class NotADerivation(ValueError):
    def __init__(self, message: str, decomposition: Decomposition | None = None):
        super().__init__(message)
        self.decomposition = decomposition


def _require_rank_one(cfg: AlgebraConfig) -> None:
    if cfg.n != 1:
        raise ValueError(f"W(g,1)_+ lives in rank 1, got n={cfg.n}")


def in_bplus(b: BasisElement) -> bool:
    if len(b.upper) != 1:
        raise ValueError("B_+ membership is defined for rank 1 only")
    return b.lower[0] >= 0 and b.dir == 1


def window_basis(window: Box) -> list[BasisElement]:
    return list(window.basis(1, nonnegative_lower=True))


@dataclass
class DerivationTable:
    """Images of every B_+ basis element inside ``window``."""

    window: Box
    images: dict[BasisElement, Element]

    def __post_init__(self):
        keys = window_basis(self.window)
        missing = [b for b in keys if b not in self.images]
        if missing:
            raise ValueError(f"table has no image for {missing[0]} (and {len(missing) - 1} more)")
        for b in self.images:
            if len(b.upper) != 1 or not in_bplus(b):
                raise ValueError(f"{b} is not a basis element of W(g,1)_+")
        for b, img in self.images.items():
            if any(len(t.upper) != 1 for t in img.terms):
                raise ValueError(f"image of {b} is not a rank-1 element")
        self.images = {b: self.images[b] for b in keys}

    def __call__(self, b: BasisElement) -> Element:
        return self.images[b]

    def apply(self, x: Element) -> Element:
        """Linear extension to elements supported in the window."""
        out = Element()
        for b, c in x.terms.items():
            out = out + c * self.images[b]
        return out

    def restrict(self, window: Box) -> DerivationTable:
        return DerivationTable(window, {b: self.images[b] for b in window_basis(window)})


def parse_table(text: str, window: Box | None = None) -> DerivationTable:
    """Read ``<basis> -> <element>`` lines; ``#`` starts a comment line.

    Without ``window`` the smallest box holding every key is used.  Entries
    outside the window are ignored; a window element without an entry is an
    error.
    """
    from .syntax import ElementSyntaxError, parse_basis, parse_element

    images: dict[BasisElement, Element] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lhs, sep, rhs = raw.partition("->")
        if not sep:
            raise ElementSyntaxError("expected '<basis> -> <element>'", raw, len(raw.rstrip()), lineno)
        b = parse_basis(lhs, 1, line=lineno)
        try:
            img = parse_element(rhs, 1, line=lineno)
        except ElementSyntaxError as err:
            raise ElementSyntaxError(err.message, raw, err.pos + len(lhs) + 2, lineno) from None
        if not in_bplus(b):
            raise ValueError(f"line {lineno}: {b} is not a basis element of W(g,1)_+")
        if b in images:
            raise ValueError(f"line {lineno}: duplicate entry for {b}")
        images[b] = img
    if window is None:
        if not images:
            raise ValueError("derivation table is empty")
        window = Box(max(abs(b.upper[0]) for b in images), max(b.lower[0] for b in images))
    inside = {b: img for b, img in images.items() if window.contains(b)}
    return DerivationTable(window, inside)


def format_table(D: DerivationTable) -> str:
    lines = [f"# window {D.window.upper},{D.window.lower}"]
    lines += [f"{b} -> {img}" for b, img in D.images.items()]
    return "\n".join(lines) + "\n"


def tabulate(rule: Rule, window: Box) -> DerivationTable:
    return DerivationTable(window, {b: rule(b) for b in window_basis(window)})


def scalar_derivation(s) -> Rule:
    """``(a|i)_1 -> s*a*(a|i)_1``."""
    s = as_rational(s)

    def rule(b: BasisElement) -> Element:
        return Element.of(b, s * b.upper[0])

    return rule


def inner_derivation(cfg: AlgebraConfig, G: Element) -> Rule:
    """``b -> [G, b]``."""
    _require_rank_one(cfg)

    def rule(b: BasisElement) -> Element:
        return bracket(cfg, G, Element.of(b))

    return rule


def _sum_rules(*parts: tuple[Rational, Rule]) -> Rule:
    def rule(b: BasisElement) -> Element:
        out = Element()
        for c, r in parts:
            if c:
                out = out + c * r(b)
        return out

    return rule


def recompose(cfg: AlgebraConfig, G: Element, c, s) -> Rule:
    """The rule ``ad_G + c*ad_d + S_s``."""
    return _sum_rules(
        (Rational(1), inner_derivation(cfg, G)),
        (as_rational(c), inner_derivation(cfg, Element.of(PARTIAL))),
        (Rational(1), scalar_derivation(s)),
    )


def differentiate(cfg: AlgebraConfig, f: FunctionElement) -> FunctionElement:
    """d/dx on F[e^{+-x}, x]: ``(a, i) -> m*a*(a, i) + i*(a, i-1)``."""
    _require_rank_one(cfg)
    m = cfg.slopes[0]
    acc: dict = {}
    for (a, i), c in f.terms.items():
        for key, v in (((a, i), m * a[0] * c), ((a, (i[0] - 1,)), i[0] * c)):
            if v:
                nv = acc.get(key, 0) + v
                if nv:
                    acc[key] = nv
                else:
                    del acc[key]
    return FunctionElement._wrap({FunctionTerm(*k): v for k, v in acc.items()})


def integrate(cfg: AlgebraConfig, f: FunctionElement) -> FunctionElement:
    """A ``g`` with ``d/dx g = f``, chosen without a constant term.

    For ``a != 0`` the system is triangular in the power of x with diagonal
    ``m*a``, solved from the top power down; ``x^i`` integrates to
    ``x^{i+1}/(i+1)``.
    """
    _require_rank_one(cfg)
    m = cfg.slopes[0]
    by_upper: dict[int, dict[int, Rational]] = {}
    for (a, i), c in f.terms.items():
        if i[0] < 0:
            raise ValueError(f"integrate needs non-negative powers of x, got {FunctionTerm(a, i)}")
        by_upper.setdefault(a[0], {})[i[0]] = c
    out: dict = {}
    for a, coeffs in by_upper.items():
        if a == 0:
            for i, c in coeffs.items():
                out[FunctionTerm((0,), (i + 1,))] = c / (i + 1)
            continue
        diag = m * a
        # coefficient h_i of e^{ax} x^i solves m*a*h_i + (i+1)*h_{i+1} = f_i
        top = max(coeffs)
        h_next = ZERO
        for i in range(top, -1, -1):
            h = (coeffs.get(i, ZERO) - (i + 1) * h_next) / diag
            if h:
                out[FunctionTerm((a,), (i,))] = h
            h_next = h
    return FunctionElement._wrap(out)


def _checkable_pairs(D: DerivationTable, cfg: AlgebraConfig):
    keys = list(D.images)
    inside = set(keys)
    for b1 in keys:
        for b2 in keys:
            prod = bracket(cfg, Element.of(b1), Element.of(b2))
            if all(t in inside for t in prod.terms):
                yield b1, b2, prod


def verify_derivation(cfg: AlgebraConfig, D: DerivationTable) -> list[tuple[BasisElement, BasisElement]]:
    """Pairs ``(b1, b2)`` where ``D[b1,b2] != [D b1, b2] + [b1, D b2]``.

    Only pairs whose bracket stays inside the table's window are checked.
    """
    _require_rank_one(cfg)
    bad = []
    for b1, b2, prod in _checkable_pairs(D, cfg):
        lhs = D.apply(prod)
        rhs = bracket(cfg, D(b1), Element.of(b2)) + bracket(cfg, Element.of(b1), D(b2))
        if lhs != rhs:
            bad.append((b1, b2))
    return bad


@dataclass
class Decomposition:
    """``D = ad_G + c*ad_d + S_s`` on the window; ``residual`` lists failures."""

    G: Element
    c: Rational
    s: Rational
    residual: list[BasisElement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.residual


def decompose(cfg: AlgebraConfig, D: DerivationTable) -> Decomposition:
    """Split a tabulated derivation into inner, ``ad_d`` and scalar parts.

    ``D(d) = f*d`` gives ``G = h*d`` with ``d/dx h = -f`` (since
    ``[h d, d] = -h' d``).  The remainder ``R = D - ad_G`` kills ``d``;
    ``c`` is the ``(0|0)_1`` coefficient of ``R((0|1)_1)`` and ``s`` comes
    from ``R((1|0)_1) = (c*m + s)*(1|0)_1``.  Raises
    :class:`NotADerivation` if the recomposed rule disagrees with ``D``
    anywhere on the window.
    """
    _require_rank_one(cfg)
    need = [PARTIAL, BasisElement((0,), (1,), 1), BasisElement((1,), (0,), 1)]
    for b in need:
        if b not in D.images:
            raise ValueError(f"window must contain {b}")
    m = cfg.slopes[0]

    image = D(PARTIAL)
    f_terms = {}
    for b, c in image.terms.items():
        if b.lower[0] < 0:
            raise NotADerivation(f"D(d) has term {b} outside W(g,1)_+")
        f_terms[FunctionTerm(b.upper, b.lower)] = c
    h = integrate(cfg, -FunctionElement(f_terms))
    G = Element({BasisElement(t.upper, t.lower, 1): c for t, c in h.terms.items()})

    ad_G = inner_derivation(cfg, G)
    r01 = D(need[1]) - ad_G(need[1])
    c = r01.coeff(PARTIAL)
    r10 = D(need[2]) - ad_G(need[2])
    s = r10.coeff(need[2]) - c * m

    rule = recompose(cfg, G, c, s)
    residual = [b for b, img in D.images.items() if rule(b) != img]
    result = Decomposition(G, c, s, residual)
    if residual:
        raise NotADerivation(
            f"recomposition disagrees with the table on {len(residual)} window element(s)", result
        )
    return result


def scalar_derivation_family(cfg: AlgebraConfig, window: Box) -> tuple[list[BasisElement], list[list[Rational]]]:
    """Solve for every scalar derivation ``b -> f(b)*b`` on ``window``.

    For ``b1 = (a|i), b2 = (b|j)`` the bracket is
    ``m(b-a)(a+b|i+j) + (j-i)(a+b|i+j-1)``, so the derivation identity forces
    ``f(a+b, i+j) = f(a,i) + f(b,j)`` when ``b != a`` and
    ``f(a+b, i+j-1) = f(a,i) + f(b,j)`` when ``j != i``, whenever the target
    lies in the window.  Returns the unknowns and a nullspace basis.
    """
    _require_rank_one(cfg)
    unknowns = window_basis(window)
    col = {b: k for k, b in enumerate(unknowns)}
    rows = []
    for b1 in unknowns:
        for b2 in unknowns:
            prod = bracket(cfg, Element.of(b1), Element.of(b2))
            for t in prod.terms:
                if t not in col:
                    continue
                row = [ZERO] * len(unknowns)
                row[col[t]] += 1
                row[col[b1]] -= 1
                row[col[b2]] -= 1
                rows.append(row)
    return unknowns, nullspace(rows, len(unknowns))
