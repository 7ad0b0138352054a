"""Randomized and exhaustive property suites.

Each suite returns a :class:`CheckResult`; the CLI ``selftest`` command and
the acceptance tests both run them.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .algebra import AlgebraConfig, BasisElement, Element, apply_element, bracket, oracle_commutator
from .derivations import (
    decompose,
    differentiate,
    integrate,
    recompose,
    scalar_derivation_family,
    tabulate,
    verify_derivation,
)
from .ideals import SearchExhausted, ad_diag_check, ideal_closure, lemma1_multiplier
from .sampling import SLOPE_POOL, random_config, random_element, random_function, random_rational
from .scalars import Rational
from .structure import Box, degree_of
from .syntax import format_element, parse_element


@dataclass
class CheckResult:
    name: str
    passed: int
    total: int
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self, timing: bool = True) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status}  {self.name:<34} {self.passed}/{self.total}"
        return f"{text}  ({self.seconds:.1f}s)" if timing else text


def _timed(name, fn):
    start = time.perf_counter()
    passed, total, failures = fn()
    return CheckResult(name, passed, total, time.perf_counter() - start, failures)


def bracket_laws(n: int, count: int, rng: random.Random, box: Box = Box(2, 2)) -> CheckResult:
    """Antisymmetry on ``count`` pairs and Jacobi on ``count`` triples."""

    def run():
        ok, bad = 0, []
        for _ in range(count):
            cfg = random_config(rng, n)
            x, y, z = (random_element(rng, n, box, 3) for _ in range(3))
            anti = bracket(cfg, x, y) == -bracket(cfg, y, x)
            jac = (
                bracket(cfg, x, bracket(cfg, y, z))
                + bracket(cfg, y, bracket(cfg, z, x))
                + bracket(cfg, z, bracket(cfg, x, y))
            )
            if anti and not jac:
                ok += 1
            else:
                bad.append((cfg, x, y, z))
        return ok, count, bad

    return _timed(f"bracket laws n={n}", run)


def operator_oracle(n: int, count: int, rng: random.Random, box: Box = Box(2, 2)) -> CheckResult:
    """``[x, y]`` acting on ``f`` equals ``x(y(f)) - y(x(f))``."""

    def run():
        ok, bad = 0, []
        for _ in range(count):
            cfg = random_config(rng, n)
            x, y = random_element(rng, n, box, 3), random_element(rng, n, box, 3)
            f = random_function(rng, n, box, 3)
            if apply_element(cfg, bracket(cfg, x, y), f) == oracle_commutator(cfg, x, y, f):
                ok += 1
            else:
                bad.append((cfg, x, y, f))
        return ok, count, bad

    return _timed(f"operator oracle n={n}", run)


def witt_formula(n: int, X: BasisElement, Y: BasisElement) -> Element:
    """``[x^a d_i, x^b d_j] = b_i x^{a+b} x_i^{-1} d_j - a_j x^{a+b} x_j^{-1} d_i``."""
    (_, a, i), (_, b, j) = X, Y
    zero = (0,) * n
    s = [p + q for p, q in zip(a, b)]
    first, second = list(s), list(s)
    first[i - 1] -= 1
    second[j - 1] -= 1
    return Element(
        [
            (BasisElement(zero, tuple(first), j), b[i - 1]),
            (BasisElement(zero, tuple(second), i), -a[j - 1]),
        ]
    )


def witt_embedding(n: int, bound: int = 2, slopes=None) -> CheckResult:
    """All pairs of degree-0 basis elements with ``|lower| <= bound``."""

    def run():
        cfg = AlgebraConfig(n, slopes or [SLOPE_POOL[p % len(SLOPE_POOL)] for p in range(n)])
        zero = (0,) * n
        elems = [
            BasisElement(zero, low, k)
            for low in itertools.product(range(-bound, bound + 1), repeat=n)
            for k in range(1, n + 1)
        ]
        ok, bad = 0, []
        for X in elems:
            ex = Element.of(X)
            for Y in elems:
                if bracket(cfg, ex, Element.of(Y)) == witt_formula(n, X, Y):
                    ok += 1
                else:
                    bad.append((X, Y))
        return ok, len(elems) ** 2, bad

    return _timed(f"Witt embedding n={n}", run)


def grading(n: int, count: int, rng: random.Random) -> CheckResult:
    def run():
        ok, bad = 0, []
        for _ in range(count):
            cfg = random_config(rng, n)
            d1 = tuple(rng.randint(-2, 2) for _ in range(n))
            d2 = tuple(rng.randint(-2, 2) for _ in range(n))
            x = random_element(rng, n, Box(2, 2), 3, degree=d1)
            y = random_element(rng, n, Box(2, 2), 3, degree=d2)
            want = tuple(p + q for p, q in zip(d1, d2))
            if all(degree_of(b) == want for b in bracket(cfg, x, y).terms):
                ok += 1
            else:
                bad.append((cfg, x, y))
        return ok, count, bad

    return _timed(f"grading n={n}", run)


def lemma1(n: int, count: int, rng: random.Random, box: Box = Box(3, 3)) -> CheckResult:
    def run():
        ok, bad = 0, []
        for _ in range(count):
            cfg = random_config(rng, n)
            l = random_element(rng, n, box, 4)
            try:
                _, result = lemma1_multiplier(cfg, l)
            except SearchExhausted:
                bad.append((cfg, l))
                continue
            if result and all(min(b.lower) >= 1 for b in result.terms):
                ok += 1
            else:
                bad.append((cfg, l))
        return ok, count, bad

    return _timed(f"positive-lower multiplier n={n}", run)


def ad_diagonal(n: int, count: int, rng: random.Random, box: Box = Box(2, 1)) -> CheckResult:
    """Candidates ``sum_i C_i (0..0|e_i)_i`` always have a counterexample."""

    def run():
        ok, bad = 0, []
        zero = (0,) * n
        for _ in range(count):
            cfg = random_config(rng, n)
            l = Element(
                (BasisElement(zero, tuple(int(r == i) for r in range(n)), i + 1), random_rational(rng))
                for i in range(n)
            )
            m = ad_diag_check(cfg, l, box)
            if m is not None and box.contains(m):
                ok += 1
            else:
                bad.append((cfg, l))
        return ok, count, bad

    return _timed(f"no ad-diagonalizable n={n}", run)


def simplicity(
    n: int,
    count: int,
    rng: random.Random,
    gen_box: Box = Box(1, 1),
    mbox: Box = Box(2, 2),
    rbox: Box = Box(4, 4),
    max_iter: int = 20,
) -> CheckResult:
    """Closures of random generators reach every ``(0..0|0..0)_k``."""

    def run():
        cfg = AlgebraConfig(n)
        ok, bad = 0, []
        for _ in range(count):
            l = random_element(rng, n, gen_box, 3)
            report = ideal_closure(cfg, l, mbox, rbox, max_iter)
            if report.saturated:
                ok += 1
            else:
                bad.append(report)
        return ok, count, bad

    return _timed(f"simplicity witnesses n={n}", run)


def integrate_inverse(count: int, rng: random.Random, box: Box = Box(3, 3)) -> CheckResult:
    def run():
        ok, bad = 0, []
        for _ in range(count):
            cfg = AlgebraConfig(1, [rng.choice(SLOPE_POOL)])
            f = random_function(rng, 1, box, 5, nonnegative_lower=True)
            if differentiate(cfg, integrate(cfg, f)) == f:
                ok += 1
            else:
                bad.append((cfg, f))
        return ok, count, bad

    return _timed("integrate right inverse", run)


def derivation_round_trip(
    count: int, rng: random.Random, gen_box: Box = Box(2, 2), window: Box = Box(4, 4)
) -> CheckResult:
    """Tabulate ``ad_G + c*ad_d + S_s``, decompose, and compare actions."""

    def run():
        ok, bad = 0, []
        for _ in range(count):
            cfg = AlgebraConfig(1, [rng.choice(SLOPE_POOL)])
            G = random_element(rng, 1, gen_box, 4, nonzero=False, nonnegative_lower=True)
            c0 = random_rational(rng, nonzero=False)
            s0 = random_rational(rng, nonzero=False)
            D = tabulate(recompose(cfg, G, c0, s0), window)
            try:
                dec = decompose(cfg, D)
            except ValueError:
                bad.append((cfg, G, c0, s0))
                continue
            back = tabulate(recompose(cfg, dec.G, dec.c, dec.s), window)
            if back.images == D.images:
                ok += 1
            else:
                bad.append((cfg, G, c0, s0))
        return ok, count, bad

    return _timed("derivation round trip", run)


def recomposition_is_derivation(count: int, rng: random.Random, window: Box = Box(3, 3)) -> CheckResult:
    def run():
        ok, bad = 0, []
        for _ in range(count):
            cfg = AlgebraConfig(1, [rng.choice(SLOPE_POOL)])
            G = random_element(rng, 1, Box(2, 2), 3, nonzero=False, nonnegative_lower=True)
            D = tabulate(recompose(cfg, G, random_rational(rng), random_rational(rng)), window)
            if not verify_derivation(cfg, D):
                ok += 1
            else:
                bad.append((cfg, G))
        return ok, count, bad

    return _timed("recomposition is a derivation", run)


def scalar_family(window: Box = Box(3, 3), m=1) -> CheckResult:
    """The scalar derivations on ``window`` are exactly ``f(a, i) = s*a``."""

    def run():
        unknowns, family = scalar_derivation_family(AlgebraConfig(1, [m]), window)
        if len(family) != 1:
            return 0, 1, [family]
        v = family[0]
        pivot = next(x for x, b in zip(v, unknowns) if b.upper[0] != 0)
        scale = pivot / next(b.upper[0] for x, b in zip(v, unknowns) if b.upper[0] != 0)
        matches = all(x == scale * b.upper[0] for x, b in zip(v, unknowns))
        return int(matches), 1, [] if matches else [family]

    return _timed(f"scalar derivations Box({window.upper},{window.lower})", run)


def print_parse(n: int, count: int, rng: random.Random) -> CheckResult:
    def run():
        ok, bad = 0, []
        for _ in range(count):
            x = random_element(rng, n, Box(5, 5), 6, nonzero=False)
            text = format_element(x)
            if parse_element(text, n) == x and format_element(parse_element(text, n)) == text:
                ok += 1
            else:
                bad.append(text)
        return ok, count, bad

    return _timed(f"print/parse round trip n={n}", run)


def selftest(seed: int, n: int, count: int = 100) -> list[CheckResult]:
    """Quick versions of every suite; derivation suites always use rank 1."""
    rng = random.Random(seed)
    results = [
        bracket_laws(n, count, rng),
        operator_oracle(n, count, rng),
        witt_embedding(n, 1 if n > 2 else 2),
        grading(n, count, rng),
        lemma1(n, count, rng),
        ad_diagonal(n, count, rng),
        print_parse(n, count, rng),
        integrate_inverse(count, rng),
        derivation_round_trip(max(1, count // 10), rng, window=Box(3, 3)),
        scalar_family(Box(2, 2)),
    ]
    if n <= 2:
        results.append(simplicity(n, max(1, count // 50), rng, mbox=Box(1, 1), rbox=Box(3, 3)))
    return results
