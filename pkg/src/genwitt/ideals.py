"""Finite-window witnesses for ideal structure.

These engines search inside explicit boxes.  A closure only ever inserts
exact brackets of ideal members, so every reported membership is genuine;
what the box bounds cost is completeness, never soundness.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field

from .algebra import AlgebraConfig, BasisElement, Element, _bracket_into, bracket
from .linalg import RowSpace
from .structure import Box, lp, string_number

__all__ = [
    "SearchExhausted",
    "ClosureReport",
    "Provenance",
    "lemma1_multiplier",
    "ideal_closure",
    "is_member",
    "replay_provenance",
    "ad_diag_check",
    "targets",
]

log = logging.getLogger(__name__)

LEMMA1_MAX_SCALE = 16


class SearchExhausted(RuntimeError):
    pass


def targets(n: int) -> list[BasisElement]:
    """The elements ``(0..0|0..0)_k``; an ideal holding all of them is everything."""
    zero = (0,) * n
    return [BasisElement(zero, zero, k) for k in range(1, n + 1)]


def _witness_direction(l: Element) -> int | None:
    a, i, _ = l.leading()
    for r, (ar, ir) in enumerate(zip(a, i), start=1):
        if ar or ir:
            return r
    return None


def lemma1_multiplier(cfg: AlgebraConfig, l: Element) -> tuple[BasisElement, Element]:
    """Find ``M = (0..0|j_1..j_n)_t`` with ``[M, l]`` nonzero and all lower indices positive.

    The lower indices are ``j_r = c * K**(n - r + 1)`` with
    ``K = max(2, lp(l) + 2)`` and ``c = 1, 2, ..., 16``.  Direction ``t`` is
    the first coordinate where the lex-greatest term of ``l`` has a nonzero
    upper or lower index; the remaining directions are tried afterwards.
    """
    if not l:
        raise ValueError("lemma1_multiplier needs a nonzero element")
    n = cfg.n
    K = max(2, lp(l) + 2)
    first = _witness_direction(l)
    if first is None:
        first = l.leading()[2]
    order = [first] + [t for t in range(1, n + 1) if t != first]
    zero = (0,) * n
    for t in order:
        for c in range(1, LEMMA1_MAX_SCALE + 1):
            j = tuple(c * K ** (n - r + 1) for r in range(1, n + 1))
            M = BasisElement(zero, j, t)
            result = bracket(cfg, Element.of(M), l)
            if result and all(min(b[1]) >= 1 for b in result.terms):
                return M, result
    raise SearchExhausted(f"no multiplier found for {l} within scale {LEMMA1_MAX_SCALE}")


@dataclass
class Provenance:
    """One inserted product: ``product = [source, multiplier]``."""

    source: Element
    multiplier: BasisElement
    product: Element


@dataclass
class ClosureReport:
    generator: Element
    mbox: Box
    rbox: Box
    multipliers: int
    rank: int
    reached_targets: tuple[int, ...]
    iterations: int
    saturated: bool
    stop_reason: str
    products_tried: int = 0
    products_discarded: int = 0
    space: RowSpace = field(default=None, repr=False)
    provenance: list[Provenance] | None = field(default=None, repr=False)

    def summary(self) -> str:
        reached = ",".join(str(k) for k in self.reached_targets) or "none"
        return (
            f"generator: {self.generator}\n"
            f"mbox: {self.mbox.upper},{self.mbox.lower}  rbox: {self.rbox.upper},{self.rbox.lower}"
            f"  multipliers: {self.multipliers}\n"
            f"iterations: {self.iterations}  rank: {self.rank}"
            f"  products: {self.products_tried} tried, {self.products_discarded} discarded\n"
            f"reached targets: {reached}\n"
            f"saturated: {'yes' if self.saturated else 'no'} ({self.stop_reason})"
        )


def _multiplier_order(box: Box, n: int) -> list[BasisElement]:
    # small multipliers first: by largest |upper|, then largest |lower|,
    # lex-descending inside each shell
    return sorted(
        box.basis(n), key=lambda b: (max(abs(a) for a in b[0]), max(abs(i) for i in b[1]))
    )


def _priority(v: Element) -> tuple[int, int, int]:
    return string_number(v), max(max(abs(a) for a in b[0]) for b in v.terms), len(v)


def ideal_closure(
    cfg: AlgebraConfig,
    l: Element,
    mbox: Box,
    rbox: Box,
    max_iter: int = 20,
    *,
    record: bool = False,
) -> ClosureReport:
    """Grow a spanning set of the ideal generated by ``l`` inside ``rbox``.

    Products ``[v, M]`` of accepted vectors ``v`` with basis elements ``M``
    of ``mbox`` wait in a queue ordered by string number, then largest
    ``|upper|``, then term count; the cheapest one is reduced against the
    span next and kept when it raises the rank.  A product is queued only
    when its whole support lies in ``rbox``.  ``l`` has generation 0 and
    ``[v, M]`` one more than ``v``; nothing beyond generation ``max_iter``
    is formed.  Stops once every target ``(0..0|0..0)_k`` is a member or the
    queue runs dry.
    """
    if not l:
        raise ValueError("ideal_closure needs a nonzero generator")
    if not rbox.contains_support(l):
        raise ValueError(f"generator support is not inside rbox {rbox.upper},{rbox.lower}")
    n = cfg.n
    slopes = cfg.slopes
    for b in l.terms:
        cfg.check_basis(b)
    multipliers = _multiplier_order(mbox, n)
    goal = targets(n)
    space = RowSpace()
    provenance = [] if record else None
    reached: set[int] = set()

    A, I = rbox.upper, rbox.lower
    tried = discarded = 0
    depth_cut = False
    iterations = 0
    counter = itertools.count()
    queue = [(_priority(l), next(counter), 0, l, None, None)]
    while queue and len(reached) < n:
        _, _, gen, vec, source, M = heapq.heappop(queue)
        if not space.insert(vec):
            continue
        iterations = max(iterations, gen)
        if record:
            provenance.append(Provenance(source if source is not None else Element({}), M, vec))
        for b in goal:
            if b[2] not in reached and space.contains(Element.of(b)):
                reached.add(b[2])
        if space.rank % 200 == 0:
            log.debug("rank %d, generation %d, queued %d", space.rank, gen, len(queue))
        if gen >= max_iter:
            depth_cut = True
            continue
        terms = vec.terms
        for M in multipliers:
            acc: dict = {}
            for X, cx in terms.items():
                _bracket_into(acc, slopes, X, M, cx)
            if not acc:
                continue
            tried += 1
            inside = all(
                all(-A <= a <= A for a in key[0]) and all(-I <= i <= I for i in key[1]) for key in acc
            )
            if not inside:
                discarded += 1
                continue
            prod = Element._wrap({BasisElement(*key): c for key, c in acc.items()})
            heapq.heappush(queue, (_priority(prod), next(counter), gen + 1, prod, vec, M))
    if len(reached) == n:
        stop = "targets"
    elif depth_cut:
        stop = "max_iter"
    else:
        stop = "fixpoint"
    return ClosureReport(
        generator=l,
        mbox=mbox,
        rbox=rbox,
        multipliers=len(multipliers),
        rank=space.rank,
        reached_targets=tuple(sorted(reached)),
        iterations=iterations,
        saturated=len(reached) == n,
        stop_reason=stop,
        products_tried=tried,
        products_discarded=discarded,
        space=space,
        provenance=provenance,
    )


def is_member(report: ClosureReport | RowSpace, x: Element) -> bool:
    space = report.space if isinstance(report, ClosureReport) else report
    return space.contains(x)


def replay_provenance(cfg: AlgebraConfig, report: ClosureReport, rows: list[Element] | None = None) -> bool:
    """Re-derive the recorded products and check ``rows`` lie in their span.

    Every product must equal the bracket of its recorded source with its
    multiplier, and every source must already lie in the span of the
    generator and earlier products.
    """
    if report.provenance is None:
        raise ValueError("closure was run without record=True")
    span = RowSpace()
    for k, step in enumerate(report.provenance):
        if k == 0:
            if step.product != report.generator:
                return False
        else:
            if not span.contains(step.source):
                return False
            if bracket(cfg, step.source, Element.of(step.multiplier)) != step.product:
                return False
        span.insert(step.product)
    if rows is None:
        rows = report.space.rows()
    return all(span.contains(r) for r in rows)


def _scan_order(box: Box, n: int) -> list[BasisElement]:
    # lower-index shells outward from zero, lex-descending inside each shell
    elems = list(box.basis(n))
    return sorted(elems, key=lambda b: max(abs(i) for i in b[1]))


def ad_diag_check(cfg: AlgebraConfig, l: Element, box: Box) -> BasisElement | None:
    """First basis element ``m`` of ``box`` with ``[l, m]`` not a multiple of ``m``.

    Returns None when every ``m`` in the box is an eigenvector of ``ad l``.
    Elements are scanned by increasing largest ``|lower index|``, so the
    ``(a|0)_j`` probes come first, then lex-descending within each shell.
    """
    if not l:
        raise ValueError("ad_diag_check needs a nonzero element")
    for m in _scan_order(box, cfg.n):
        image = bracket(cfg, l, Element.of(m))
        if image and (len(image) != 1 or m not in image.terms):
            return m
    return None
