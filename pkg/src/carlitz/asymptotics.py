"""Leading-order asymptotic formulas and their comparison with exact counts.

Every target is indexed by the half-perimeter ``n``:

``CC_CARLITZ``      column-convex Carlitz polyominoes
``CC_LEVELS``       total of B + U over column-convex polyominoes
``CONVEX_CARLITZ``  convex Carlitz polyominoes
``CONVEX_LEVELS``   total of B + U over convex polyominoes

Predictions use mpmath at 50 significant digits by default, so the
difference between an exact count and its prediction is the asymptotic
error and not rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath

from . import closed_form

TARGETS = ("CC_CARLITZ", "CC_LEVELS", "CONVEX_CARLITZ", "CONVEX_LEVELS")
DEFAULT_DPS = 50


def normalize_target(name: str) -> str:
    key = name.upper().replace("-", "_")
    if key not in TARGETS:
        raise ValueError(f"unknown asymptotic target {name!r}; choose from {TARGETS}")
    return key


def predict(target: str, n: int, *, dps: int = DEFAULT_DPS, corrected: bool = False) -> mpmath.mpf:
    """Leading-order estimate of the ``n``-th count.

    ``corrected`` only affects ``CC_LEVELS``: it swaps the growth base
    ``(3 + 2*sqrt(2))/2`` for ``3 + 2*sqrt(2)``, which is the base the exact
    coefficients actually follow (see :func:`convergence_report`).
    """
    target = normalize_target(target)
    if n < 2:
        raise ValueError("n must be at least 2")
    with mpmath.workdps(dps):
        n_ = mpmath.mpf(n)
        if target == "CC_CARLITZ":
            c = 9 * mpmath.sqrt(2) * (14 + 3 * mpmath.sqrt(3)) / 2704
            value = c * mpmath.mpf(4) ** n / mpmath.sqrt(mpmath.pi * n_ ** 3)
        elif target == "CC_LEVELS":
            r2 = mpmath.sqrt(2)
            c = ((1588 - 999 * r2) * mpmath.sqrt(5 * r2 - 7)
                 + 6 * (51 * r2 - 28) * mpmath.sqrt(99 * r2 - 140)) / 2209
            base = 3 + 2 * r2 if corrected else (3 + 2 * r2) / 2
            value = c / mpmath.sqrt(mpmath.pi * n_) * base ** n
        elif target == "CONVEX_CARLITZ":
            value = (n_ + 1) / 10 * ((3 + mpmath.sqrt(5)) / 2) ** (n - 2)
        else:
            value = n_ ** 2 * mpmath.mpf(4) ** (n - 4)
        return +value


@lru_cache(maxsize=8)
def _exact(target: str, order: int) -> tuple[int, ...]:
    if target == "CC_CARLITZ":
        coeffs = closed_form.cc_carlitz_perimeter_dense(order).coeffs
    elif target == "CC_LEVELS":
        coeffs = closed_form.dq_f1_at_1(order).univariate()
    elif target == "CONVEX_CARLITZ":
        coeffs = closed_form.convex_carlitz_perimeter_dense(2 * order).coeffs[::2]
    else:
        coeffs = closed_form.dq_g1_dense(order).coeffs
    out = []
    for c in coeffs[: order + 1]:
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {c}")
        out.append(int(c))
    return tuple(out)


def exact_coefficients(target: str, order: int) -> list[int]:
    """Exact counts ``a(0..order)`` from the closed forms."""
    return list(_exact(normalize_target(target), order))


@dataclass(frozen=True)
class ReportRow:
    n: int
    exact: int
    predicted: mpmath.mpf
    ratio: mpmath.mpf

    @property
    def error(self) -> mpmath.mpf:
        return abs(self.ratio - 1)


@dataclass(frozen=True)
class ConvergenceReport:
    target: str
    rows: tuple[ReportRow, ...]
    corrected: bool = False

    @property
    def monotone(self) -> bool:
        """Whether ``|ratio - 1|`` strictly decreases along the checkpoints."""
        errs = [r.error for r in self.rows]
        return all(b < a for a, b in zip(errs, errs[1:]))

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "target": self.target,
            "corrected": self.corrected,
            "monotone": self.monotone,
            "rows": [
                {"n": r.n, "exact": str(r.exact), "predicted": mpmath.nstr(r.predicted, digits),
                 "ratio": mpmath.nstr(r.ratio, digits)}
                for r in self.rows
            ],
        }


def convergence_report(target: str, checkpoints, *, dps: int = DEFAULT_DPS,
                       corrected: bool = False) -> ConvergenceReport:
    """Exact count, prediction and their ratio at each checkpoint."""
    target = normalize_target(target)
    checkpoints = sorted(set(int(n) for n in checkpoints))
    if not checkpoints or checkpoints[0] < 2:
        raise ValueError("checkpoints must be at least 2")
    exact = _exact(target, checkpoints[-1])
    rows = []
    with mpmath.workdps(dps):
        for n in checkpoints:
            pred = predict(target, n, dps=dps, corrected=corrected)
            rows.append(ReportRow(n, exact[n], pred, mpmath.mpf(exact[n]) / pred))
    return ConvergenceReport(target, tuple(rows), corrected)


def growth_ratio(target: str, n: int, *, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """``a(n+1) / a(n)`` from the exact coefficients."""
    target = normalize_target(target)
    exact = _exact(target, n + 1)
    with mpmath.workdps(dps):
        return mpmath.mpf(exact[n + 1]) / exact[n]


def growth_constant(target: str, *, dps: int = DEFAULT_DPS, corrected: bool = False) -> mpmath.mpf:
    """Exponential growth base claimed by the target's formula."""
    target = normalize_target(target)
    with mpmath.workdps(dps):
        if target == "CC_CARLITZ" or target == "CONVEX_LEVELS":
            return mpmath.mpf(4)
        if target == "CONVEX_CARLITZ":
            return (3 + mpmath.sqrt(5)) / 2
        base = 3 + 2 * mpmath.sqrt(2)
        return base if corrected else base / 2
