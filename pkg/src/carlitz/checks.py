"""Cross-checks between brute force, the column recurrences and the closed forms.

Each check returns a :class:`CheckResult`; a failure names the family and
the first coefficient (in sorted exponent order) where two routes differ.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from . import closed_form as cf
from .oracle import kernel_residual, run_F, run_G_chain
from .polyomino import count_by_stats, refined_counts
from .series import MultiSeries


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{status} {self.name} ({self.seconds:.2f}s){tail}"


def first_difference(a: dict, b: dict):
    """Smallest key at which two coefficient maps differ, with both values."""
    for key in sorted(set(a) | set(b)):
        va, vb = a.get(key, 0), b.get(key, 0)
        if va != vb:
            return key, va, vb
    return None


def series_difference(a: MultiSeries, b: MultiSeries):
    """First differing monomial of two series over their common precision."""
    if set(a.vars) != set(b.vars):
        raise ValueError(f"series in {a.vars} and {b.vars} cannot be compared")
    _, caps, total = a._joint(b)
    a = a.truncate(caps=caps, total=total)
    b = b.truncate(caps=caps, total=total)
    diff = first_difference(a.terms, b.terms)
    if diff is None:
        return None
    key, va, vb = diff
    return dict(zip(a.vars, key)), va, vb


def swap_pq(s: MultiSeries) -> MultiSeries:
    """Exchange the roles of ``p`` and ``q``."""
    ip, iq = s.vars.index("p"), s.vars.index("q")
    terms = {}
    for key, c in s.terms.items():
        k = list(key)
        k[ip], k[iq] = k[iq], k[ip]
        terms[tuple(k)] = c
    return MultiSeries(s.vars, terms, caps=s.caps, total=s.total)


def _diag(s: MultiSeries) -> MultiSeries:
    """Set ``p = q``."""
    rest = tuple(v for v in s.vars if v != "p")
    return s.substitute("p", MultiSeries.gen("q", rest, total=s.total))


def _timed(name, fn) -> CheckResult:
    start = time.perf_counter()
    diff = fn()
    elapsed = time.perf_counter() - start
    if diff is None:
        return CheckResult(name, True, "", elapsed)
    where, got, want = diff
    return CheckResult(name, False, f"first difference at {where}: {got} != {want}", elapsed)


_CLASS_OF = {"G_bt": "convex-bt", "G_t": "convex-t", "G_b": "convex-b", "G": "convex"}


def run_checks(N: int, *, mutation: str | None = None, safety_bound: int | None = None,
               workers: int = 1) -> list[CheckResult]:
    """Brute force = recurrences = closed forms for every family up to half-perimeter ``N``."""
    results = []
    F = run_F(N, mutation=mutation, safety_bound=safety_bound)
    chain = run_G_chain(N, mutation=mutation, safety_bound=safety_bound)

    results.append(_timed("F: brute force = recurrence", lambda: first_difference(
        F.refined(by_first_height=True),
        refined_counts(N, "cc", by_first_height=True, safety_bound=safety_bound))))
    for fam, cls in _CLASS_OF.items():
        results.append(_timed(f"{fam}: brute force = recurrence", lambda fam=fam, cls=cls: first_difference(
            chain[fam].refined(by_first_height=True),
            refined_counts(N, cls, by_first_height=True, safety_bound=safety_bound))))

    results.append(_timed("F: recurrence = closed form (p = q)", lambda: series_difference(
        _diag(F.to_series()), cf.F1_qq(N))))
    results.append(_timed("G_bt: recurrence = closed form", lambda: series_difference(
        chain["G_bt"].to_series(with_u=True), cf.gbt_u(N))))
    gt = cf.gt_u(N)
    results.append(_timed("G_t: recurrence = closed form", lambda: series_difference(
        chain["G_t"].to_series(with_u=True), gt)))
    results.append(_timed("G_b: recurrence = closed form with p, q exchanged", lambda: series_difference(
        chain["G_b"].to_series(with_u=True), swap_pq(gt))))
    results.append(_timed("G_t(1): recurrence = closed form", lambda: series_difference(
        chain["G_t"].to_series(), cf.gt_1(N))))
    results.append(_timed("G: recurrence = closed form", lambda: series_difference(
        chain["G"].to_series(), cf.g1_full(N))))

    def diagonal_convex():
        full = chain["G"].to_series()
        merged = _diag(full).substitute("y", MultiSeries.gen("x", ("x", "q"), total=full.total))
        return series_difference(merged, cf.g1_xx_qq(N))

    results.append(_timed("G(1; x, x, q, q): recurrence = closed form", diagonal_convex))

    def perimeter(cls, series):
        counts = count_by_stats(N, cls, True, safety_bound=safety_bound, workers=workers).counts
        want = {n: counts.get(n, 0) for n in range(N + 1)}
        got = {n: int(series[n]) for n in range(N + 1)}
        return first_difference(got, want)

    results.append(_timed("column-convex Carlitz perimeter: closed form = brute force",
                          lambda: perimeter("cc", cf.cc_carlitz_perimeter_dense(N).coeffs)))
    results.append(_timed("convex Carlitz perimeter: closed form = brute force",
                          lambda: perimeter("convex", cf.convex_carlitz_perimeter_dense(2 * N).coeffs[::2])))

    def levels(cls, series):
        table = count_by_stats(N, cls, full=True, safety_bound=safety_bound, workers=workers)
        want = {n: table.level_sum(n) if n >= 2 else 0 for n in range(N + 1)}
        got = {n: int(series[n]) for n in range(N + 1)}
        return first_difference(got, want)

    results.append(_timed("convex level sums: closed form = brute force",
                          lambda: levels("convex", cf.dq_g1_dense(N).coeffs)))
    results.append(_timed("column-convex level sums: series = brute force",
                          lambda: levels("cc", cf.dq_f1_at_1(N).univariate())))

    def residual():
        r = kernel_residual(N, mutation=mutation, safety_bound=safety_bound)
        if r.is_zero():
            return None
        key = min(r.terms)
        return dict(zip(r.vars, key)), r.terms[key], 0

    results.append(_timed("F: kernel equation residual vanishes", residual))
    return results
