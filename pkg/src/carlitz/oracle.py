"""Column-by-column recurrences for the first-column-indexed generating functions.

Each family is a map ``(a, m) -> polynomial`` where ``a`` is the size of the
first column, ``m`` the number of columns (the power of ``x``), and the
polynomial is a dict ``{(h, B, U): count}`` for ``y**h p**B q**U``. Every
term on the right-hand side of the recurrences carries one factor ``x``, so
the ``m``-column layer depends only on layer ``m - 1`` and the recurrences,
self-referential terms included, are evaluated exactly in one sweep.

Only terms with ``m + h <= N`` are kept. Since ``h >= a`` and ``h`` grows
with every glued column, this truncation of the infinite sums over the
second column's size is exact.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .polyomino import DEFAULT_SAFETY_BOUND, BoundError
from .series import MultiSeries

FAMILIES = ("F", "G_bt", "G_t", "G_b", "G")
MUTATIONS = ("gluing-weight", "b-marking")

Poly = dict  # {(h, B, U): int}
# a weight is a polynomial in y, p, q: {(dy, dB, dU): int}


@dataclass
class ColumnIndexedGF:
    family: str
    bound: int
    entries: dict[tuple[int, int], Poly] = field(default_factory=dict)

    def first_column(self, a: int) -> dict[tuple[int, int, int, int], int]:
        """Coefficients of the ``a``-th function keyed ``(m, h, B, U)``."""
        out = {}
        for (aa, m), poly in self.entries.items():
            if aa == a:
                for (h, B, U), c in poly.items():
                    out[(m, h, B, U)] = c
        return out

    def refined(self, *, by_first_height: bool = False) -> dict[tuple[int, ...], int]:
        """All coefficients keyed ``(v, h, B, U)`` (prefixed by ``a`` if requested)."""
        out: dict = defaultdict(int)
        for (a, m), poly in self.entries.items():
            for (h, B, U), c in poly.items():
                key = (m, h, B, U)
                out[(a,) + key if by_first_height else key] += c
        return {k: v for k, v in out.items() if v}

    def by_half_perimeter(self) -> dict[int, dict[tuple[int, int], int]]:
        """``n -> {(B, U): count}`` after merging both perimeter statistics."""
        out: dict = defaultdict(lambda: defaultdict(int))
        for (m, h, B, U), c in self.refined().items():
            out[m + h][(B, U)] += c
        return {n: dict(sorted(d.items())) for n, d in sorted(out.items())}

    def to_series(self, *, with_u: bool = False) -> MultiSeries:
        """Sum over ``a`` as a series in x, y, p, q (and ``u**(a-1)`` if requested)."""
        variables = ("x", "y", "p", "q", "u") if with_u else ("x", "y", "p", "q")
        terms: dict = defaultdict(int)
        for (a, m), poly in self.entries.items():
            for (h, B, U), c in poly.items():
                key = (m, h, B, U, a - 1) if with_u else (m, h, B, U)
                terms[key] += c
        return MultiSeries(variables, dict(terms), total=2 * self.bound)


def _check(N: int, safety_bound: int | None) -> None:
    if N < 2:
        raise ValueError("truncation bound must be at least 2")
    limit = DEFAULT_SAFETY_BOUND if safety_bound is None else safety_bound
    if N > limit:
        raise BoundError(f"bound {N} exceeds safety bound {limit}")


def _ys(lo: int, hi: int, coef: int = 1) -> dict:
    """``coef * (y**lo + ... + y**hi)``."""
    return {(k, 0, 0): coef for k in range(lo, hi + 1)}


def _add_weight(w: dict, extra: dict) -> dict:
    out = dict(w)
    for k, c in extra.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _glue(target: dict, weight: dict, poly: Poly, m: int, N: int) -> None:
    for (dy, dB, dU), wc in weight.items():
        for (h, B, U), c in poly.items():
            hh = h + dy
            if m + hh <= N:
                key = (hh, B + dB, U + dU)
                target[key] = target.get(key, 0) + wc * c


def _layers(N: int, rules, families: tuple[str, ...]) -> dict[str, ColumnIndexedGF]:
    """Run column layers; ``rules(fam, a, s)`` lists ``(source_family, weight)`` pairs."""
    prev = {fam: {a: {(a, 0, 0): 1} for a in range(1, N)} for fam in families}
    out = {fam: ColumnIndexedGF(fam, N) for fam in families}
    for fam in families:
        for a, poly in prev[fam].items():
            out[fam].entries[(a, 1)] = dict(poly)
    for m in range(2, N):
        cur = {fam: {} for fam in families}
        for fam in families:
            for a in range(1, N - m + 1):
                acc: dict = {}
                for s in range(1, N - m + 2):
                    for src, weight in rules(fam, a, s):
                        poly = prev[src].get(s)
                        if poly and weight:
                            _glue(acc, weight, poly, m, N)
                acc = {k: c for k, c in acc.items() if c}
                if acc:
                    cur[fam][a] = acc
                    out[fam].entries[(a, m)] = acc
        prev = cur
    return out


def _f_weight(a: int, s: int, mutation: str | None) -> dict:
    """Weight of ``F_s`` in ``F_a``: every way of gluing a column of ``s`` cells."""
    w: dict = {}
    if s < a:
        inner = a - 1 - s + (1 if mutation == "gluing-weight" else 0)
        w[(a - s, 0, 0)] = inner
        w[(a - s, 2 if mutation == "b-marking" else 1, 0)] = 1
        w[(a - s, 0, 1)] = 1
    if s == a:
        w[(0, 1, 1)] = 1
    if 2 <= s <= a:
        w = _add_weight(w, _ys(a - s + 1, a - 1, 2))
    if s >= a + 1:
        w = _add_weight(w, _ys(1, a - 1, 2))
        w = _add_weight(w, {(0, 1, 0): 1, (0, 0, 1): 1})
    if s >= a + 2:
        w = _add_weight(w, {(0, 0, 0): s - 1 - a})
    return {k: c for k, c in w.items() if c}


def run_F(N: int, *, mutation: str | None = None, safety_bound: int | None = None) -> ColumnIndexedGF:
    """Column-convex polyominoes by first column, columns, rows, bottom and top levels."""
    _check(N, safety_bound)
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")

    def rules(fam, a, s):
        return [("F", _f_weight(a, s, mutation))]

    return _layers(N, rules, ("F",))["F"]


def _g_rules(mutation: str | None):
    extra = 1 if mutation == "gluing-weight" else 0
    pb = 2 if mutation == "b-marking" else 1

    def inner(a, s):
        # second column strictly inside the first
        return {(a - s, 0, 0): a - 1 - s + extra} if s < a else {}

    def rules(fam, a, s):
        out = []
        if fam == "G_bt":
            if s < a:
                out.append(("G_bt", _add_weight(inner(a, s), {(a - s, pb, 0): 1, (a - s, 0, 1): 1})))
            if s == a:
                out.append(("G_bt", {(0, pb, 1): 1}))
            return out
        if s < a:
            out.append(("G_bt", inner(a, s)))
        if fam == "G_t":
            if s < a:
                out.append(("G_bt", {(a - s, 0, 1): 1}))
                out.append(("G_t", {(a - s, pb, 0): 1}))
            if s == a:
                out.append(("G_t", {(0, pb, 1): 1}))
            if 2 <= s <= a:
                out.append(("G_t", _ys(a - s + 1, a - 1)))
            if s >= a + 1:
                out.append(("G_t", _add_weight(_ys(1, a - 1), {(0, 0, 1): 1})))
            return out
        if fam == "G_b":
            if s < a:
                out.append(("G_bt", {(a - s, pb, 0): 1}))
                out.append(("G_b", {(a - s, 0, 1): 1}))
            if s == a:
                out.append(("G_b", {(0, pb, 1): 1}))
            if 2 <= s <= a:
                out.append(("G_b", _ys(a - s + 1, a - 1)))
            if s >= a + 1:
                out.append(("G_b", _add_weight(_ys(1, a - 1), {(0, pb, 0): 1})))
            return out
        # fam == "G"
        if s < a:
            out.append(("G_t", {(a - s, pb, 0): 1}))
            out.append(("G_b", {(a - s, 0, 1): 1}))
        if s == a:
            out.append(("G", {(0, pb, 1): 1}))
        if 2 <= s <= a:
            out.append(("G_t", _ys(a - s + 1, a - 1)))
            out.append(("G_b", _ys(a - s + 1, a - 1)))
        if s >= a + 1:
            out.append(("G_t", _ys(1, a - 1)))
            out.append(("G_b", _ys(1, a - 1)))
            out.append(("G", {(0, pb, 0): 1, (0, 0, 1): 1}))
        if s >= a + 2:
            out.append(("G", {(0, 0, 0): s - 1 - a}))
        return out

    return rules


def run_G_chain(N: int, *, mutation: str | None = None,
                safety_bound: int | None = None) -> dict[str, ColumnIndexedGF]:
    """Convex polyominoes and the directed subclasses, as families G_bt, G_t, G_b, G.

    G_b is iterated from its own gluing rules rather than by swapping p and q
    in G_t, so the upside-down symmetry between them is a real check.
    """
    _check(N, safety_bound)
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    return _layers(N, _g_rules(mutation), ("G_bt", "G_t", "G_b", "G"))


def kernel_residual(N: int, *, mutation: str | None = None, diagonal: bool = False,
                    safety_bound: int | None = None) -> MultiSeries:
    """Residual of the functional equation for F(u), denominators cleared.

    Uses the oracle's F(u), F(1) and dF/du at u = 1. With ``diagonal`` the
    equation is specialised to p = q first. Zero to truncation order when the
    recurrence and the functional equation agree.
    """
    gf = run_F(N, mutation=mutation, safety_bound=safety_bound)
    Fu = gf.to_series(with_u=True)
    if diagonal:
        Fu = Fu.substitute("p", _gen(Fu, "q"))
    F1 = Fu.substitute("u", 1)
    dF1 = Fu.derive("u").substitute("u", 1)

    x, y, p, q, u = (_gen(Fu, v) for v in ("x", "y", "p", "q", "u"))
    if diagonal:
        p = q
    one = _gen(Fu, None)
    a = one - u
    b = one - y * u

    def P(r):
        return r * y * u * (u - one) - y * u * u - r * u + 2 * y * u + r - one

    lhs = a * a * b * b * Fu - x * P(q) * P(p) * Fu
    rhs = (x * y * a * a * b
           + x * a * (2 * y * u * b + (p + q) * b * b) * F1
           - x * b * b * F1
           + x * a * b * b * dF1)
    return lhs - rhs


def _gen(like: MultiSeries, var: str | None) -> MultiSeries:
    if var is None:
        return MultiSeries.constant(1, like.vars, total=like.total)
    return MultiSeries.gen(var, like.vars, total=like.total)
