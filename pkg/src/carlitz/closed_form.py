"""Closed-form generating functions, expanded as truncated series.

Conventions: ``x`` marks columns, ``y`` marks the vertical half-perimeter,
``p`` bottom levels, ``q`` top levels, ``u`` the first column (``u**(a-1)``
for a first column of ``a`` cells). ``order`` is the largest half-perimeter
kept, so multivariate results carry a total cap of ``2*order``.

Expressions containing ``sqrt(x)`` are evaluated in the half-step variable
``t`` and converted back to ``x`` once they are seen to be even in ``t``.
The kernel roots there are expanded as ``1 + O(t)`` series, so every
division below is either by a unit or by ``t**k`` times a unit, and
:func:`quotient` cancels the explicit power first.

A few of the formulas divide by a quantity whose constant term is the bare
symbol ``q`` (or ``p``). They define genuine power series only once ``p``
and ``q`` are numbers, so the fully symbolic versions are assembled by
evaluating on an integer grid of ``(p, q)`` values and interpolating each
coefficient, which is a polynomial of degree at most ``columns - 1`` in
each of ``p`` and ``q``. One surplus grid point per variable checks that
bound on every run.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Callable

from .series import MultiSeries, Rational, SeriesRing, TruncationError, as_rational
from .series.dense import DenseSeries

TARGETS = (
    "F1_qq", "F1_00", "CC_CARLITZ_PERIM", "GBT_U", "GT_U", "GT_1", "G1_FULL", "G1_XX_QQ",
    "CONVEX_CARLITZ_PERIM", "DQ_G1_AT_1", "DQ_F1_AT_1", "U_PM_COLUMN_CONVEX", "U_PRIME_TOP",
    "U_PM_CONVEX",
)

# extra weight carried through computations that divide by powers of t
_SLACK = 8


def quotient(num: MultiSeries, den: MultiSeries, strip=("t", "y")) -> MultiSeries:
    """``num / den`` where ``den`` is a monomial in ``strip`` times a unit.

    The common monomial factor is cancelled exactly (it must divide ``num``)
    and the remaining unit inverted. Precision drops by the weight removed.
    """
    for v in strip:
        if v not in den.vars:
            continue
        k = den.valuation(v)
        if k:
            kn = num.valuation(v)
            if kn is not None and kn < k:
                raise ArithmeticError(f"numerator is not divisible by {v}^{k}")
            num = num.shift(v, -k) if kn is not None else num
            den = den.shift(v, -k)
    if not den.constant_term():
        raise TruncationError("denominator is not a monomial times a unit")
    return num * den.invert()


def _order_ok(order: int, least: int = 1) -> None:
    if order < least:
        raise ValueError(f"order must be at least {least}")


def _param(R: SeriesRing, value, name: str) -> MultiSeries:
    if value is None:
        return R.gen(name)
    if isinstance(value, MultiSeries):
        return R(value)
    return R(as_rational(value))


def _finish(s: MultiSeries, order: int) -> MultiSeries:
    """Re-index to ``x`` (if in ``t``) and cut to half-perimeter ``order``."""
    if "t" in s.vars:
        s = s.to_x()
    if s.total is not None and s.total < 2 * order:
        raise TruncationError(f"lost precision: result known to weight {s.total} < {2 * order}")
    return s.truncate(total=2 * order)


# ---------------------------------------------------------------------------
# column-convex family


def _cc_roots(R: SeriesRing, y: MultiSeries, q: MultiSeries):
    """The two power-series roots of the kernel with p = q, as ``1 + O(t)``.

    The kernel vanishes when ``(1-u)(1-y*u) = eps * t * P(u)``; each sign
    gives a quadratic ``A u^2 - B u + C`` and the root near 1 is
    ``2C / (B + sqrt(B^2 - 4AC))``.
    """
    t = R.gen("t")
    one = R.one()
    roots = []
    for eps in (1, -1):
        A = y * (one - eps * t * (q - 1))
        B = (one + y) - eps * t * (q * (one + y) - 2 * y)
        C = one - eps * t * (q - 1)
        roots.append(2 * C / (B + (B * B - 4 * A * C).sqrt()))
    return roots[0], roots[1]


def _cc_ring(order: int, q, y) -> tuple[SeriesRing, MultiSeries, MultiSeries]:
    variables = ["t"]
    caps = {}
    if y is None:
        variables.append("y")
    if q is None or q == "dual":
        variables.append("q")
        if q == "dual":
            caps["q"] = 1
    R = SeriesRing(variables, total=2 * order, caps=caps)
    yv = R.gen("t") ** 2 if y == "x" else _param(R, y, "y")
    if q == "dual":
        qv = R.gen("q") + 1
    else:
        qv = _param(R, q, "q")
    return R, yv, qv


def roots_column_convex(order: int, *, q=None, y=None) -> tuple[MultiSeries, MultiSeries]:
    """Kernel roots ``(u_plus, u_minus)`` for column-convex polyominoes with p = q.

    Series in ``t`` (and ``y``, ``q`` unless fixed); they are not even in ``t``.
    A numeric ``y`` must lie in [0, 1): for ``y > 1`` the square root picks
    the branch through ``1/y`` instead.
    """
    _order_ok(order)
    R, yv, qv = _cc_ring(order, q, y)
    return _cc_roots(R, yv, qv)


def kernel_column_convex(u: MultiSeries, t: MultiSeries, y: MultiSeries, p: MultiSeries,
                q: MultiSeries) -> MultiSeries:
    """Kernel of the column-convex functional equation, denominators cleared."""
    one = t * 0 + 1

    def P(r):
        return r * y * u * (u - one) - y * u * u - r * u + 2 * y * u + r - one

    a = one - u
    b = one - y * u
    return a * a * b * b - t * t * P(q) * P(p)


def _f1(R: SeriesRing, y: MultiSeries, q: MultiSeries) -> MultiSeries:
    up, um = _cc_roots(R, y, q)
    num = (up - 1) * (um - 1) * y * (y - 1)
    den = up * um * y * (y - 2) + (up + um) * y - 2 * y + 1
    return num / den


def F1_qq(order: int, *, q=None, y=None) -> MultiSeries:
    """Column-convex polyominoes by columns (x), rows (y) and levels, with p = q.

    ``q`` may be a number, ``None`` (symbolic) or ``"dual"`` (q = 1 + e with
    e**2 = 0, the variable ``q`` standing for ``e``); ``y="x"`` merges rows
    into the column variable.
    """
    _order_ok(order, 2)
    R, yv, qv = _cc_ring(order, q, y)
    return _finish(_f1(R, yv, qv), order)


def F1_00(order: int, *, y=None) -> MultiSeries:
    """Column-convex Carlitz polyominoes by columns and rows."""
    return F1_qq(order, q=0, y=y)


def cc_carlitz_perimeter_dense(order: int) -> DenseSeries:
    """Column-convex Carlitz counts, coefficient ``n`` = half-perimeter ``n``."""
    _order_ok(order, 2)
    z = 2 * order  # the closed form is written in sqrt(x)
    P = DenseSeries.poly
    base = P([1, 0, 1, 0, 4], z)
    lin = P([0, 2, 0, 4], z)
    r1 = (base - lin).sqrt()
    r2 = (base + lin).sqrt()
    r3 = (base * base - P([0, 0, 4, 0, 16, 0, 16], z)).sqrt()
    den = P([-18, 0, 36, 0, -27, 0, 8], z) * 4
    num = (P([1, 0, -1], z) * P([-21, 0, 42, 0, -45, 0, 20], z)
           + P([1, -1], z) * P([9, 0, -9, 2], z) * P([1, 2, 1], z) * r1
           - P([1, 1], z) * P([-9, 0, 9, 2], z) * P([1, -2, 1], z) * r2
           + P([1, 0, -2, 0, 1], z) * 3 * r3)
    return (num / den).even_part_as_half_index()


def cc_carlitz_perimeter_gf(order: int) -> MultiSeries:
    """Univariate series in ``x``: coefficient of ``x**n`` counts half-perimeter ``n``."""
    return cc_carlitz_perimeter_dense(order).to_multi("x")


def dq_f1_at_1(order: int, *, method: str = "pairs") -> MultiSeries:
    """Total of ``B + U`` over column-convex polyominoes, by half-perimeter.

    ``method="pairs"`` runs the whole evaluation on value/derivative pairs
    (q = 1 + e); ``method="derivative"`` expands with symbolic q and then
    differentiates. They are independent routes to the same series.
    """
    _order_ok(order, 2)
    if method == "pairs":
        s = F1_qq(order, q="dual", y="x")
        return s.slice({"q": 1})
    if method == "derivative":
        s = F1_qq(order, y="x")
        return s.derive("q").substitute("q", 1)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# convex family


def _gbt(x, y, p, q, u):
    one = x * 0 + 1
    b = one - y * u
    return x * y * b / ((one - p * q * x) * b * b - x * y * u * (-y * u * (p + q - 1) + p + q))


def _u_prime(x, y, p, q):
    one = x * 0 + 1
    A = y * (one + p * (1 - q) * x)
    B = one + y - p * q * x - x * y * (1 - p) * (1 - q)
    C = one + q * (1 - p) * x
    return 2 * C / (B + (B * B - 4 * A * C).sqrt())


def _gt1(x, y, p, q, up):
    one = x * 0 + 1
    b = one - y * up
    first = quotient(y * (up - 1), y * up + q * b)
    second = x * y * y * up * (up - 1) / ((one - p * q * x) * b * b - x * y * up * (p + q) * b
                                          - x * y * y * up * up)
    return first + second


def _gt_kernel(x, y, p, q, u):
    one = x * 0 + 1
    return (one - u) * (one - y * u) * (one - p * q * x) + q * x * (one - y * u) \
        - p * x * y * u * (one - u) + x * y * u


def _gt(x, y, p, q, u, gt1, gbt=None):
    """G^t at ``u`` from its functional equation, denominators cleared."""
    one = x * 0 + 1
    if gbt is None:
        gbt = _gbt(x, y, p, q, u)
    num = ((one - u) * x * y
           + (one - u) * (x * y * y * u * u / (one - y * u) + q * x * y * u) * gbt
           + (x * y * u + q * x * (one - y * u)) * gt1)
    return quotient(num, _gt_kernel(x, y, p, q, u))


def _xring(order: int, variables, caps=None) -> SeriesRing:
    return SeriesRing(variables, total=2 * order, caps=caps)


def gbt_u(order: int, *, p=None, q=None) -> MultiSeries:
    """Directed convex polyominoes (tops never rise, bottoms never fall), series in x, y, p, q, u."""
    _order_ok(order, 2)
    vs = ["x", "y", "u"] + [n for n, v in (("p", p), ("q", q)) if v is None]
    R = _xring(order, vs)
    x, y, u = R.gen("x"), R.gen("y"), R.gen("u")
    return _finish(_gbt(x, y, _param(R, p, "p"), _param(R, q, "q"), u), order)


def u_prime(order: int, *, p=None, q=None) -> MultiSeries:
    """Root of the top-directed kernel, a series in x, y (and p, q)."""
    _order_ok(order)
    vs = ["x", "y"] + [n for n, v in (("p", p), ("q", q)) if v is None]
    R = _xring(order, vs)
    return _u_prime(R.gen("x"), R.gen("y"), _param(R, p, "p"), _param(R, q, "q"))


def u_pm_kernel(order: int, *, p=None, q=None) -> tuple[MultiSeries, MultiSeries]:
    """The two kernel roots ``1 + ((p+q)x +- sqrt((p-q)^2 x^2 + 4x)) / (2(1-pqx))``, in t."""
    _order_ok(order)
    vs = ["t"] + [n for n, v in (("p", p), ("q", q)) if v is None]
    R = SeriesRing(vs, total=2 * order)
    return _kernel_roots(R.gen("t"), _param(R, p, "p"), _param(R, q, "q"))


def _kernel_roots(t, p, q):
    one = t * 0 + 1
    x = t * t
    d = one - p * q * x
    rad = t * ((p - q) * (p - q) * x + 4).sqrt()
    base = (p + q) * x
    return one + (base + rad) / (2 * d), one + (base - rad) / (2 * d)


def _gt1_numeric(order: int, p, q) -> MultiSeries:
    R = _xring(order + _SLACK // 2, ["x", "y"])
    x, y = R.gen("x"), R.gen("y")
    pv, qv = R(as_rational(p)), R(as_rational(q))
    return _finish(_gt1(x, y, pv, qv, _u_prime(x, y, pv, qv)), order)


def _gt_u_numeric(order: int, p, q) -> MultiSeries:
    R = _xring(order + _SLACK // 2, ["x", "y", "u"], caps={"u": max(order - 2, 0)})
    x, y, u = R.gen("x"), R.gen("y"), R.gen("u")
    pv, qv = R(as_rational(p)), R(as_rational(q))
    gt1 = _gt1(x, y, pv, qv, _u_prime(x, y, pv, qv))
    return _finish(_gt(x, y, pv, qv, u, gt1), order)


def _g1_numeric(order: int, p, q, y=None, reading: str = "symmetric") -> MultiSeries:
    """The convex generating function at numeric p, q, in t and y (or y = x)."""
    vs = ["t"] if y == "x" else ["t", "y"]
    R = SeriesRing(vs, total=2 * order + _SLACK)
    t = R.gen("t")
    x = t * t
    yv = x if y == "x" else R.gen("y")
    pv, qv = R(as_rational(p)), R(as_rational(q))
    one = R.one()
    up, um = _kernel_roots(t, pv, qv)
    u_pr_pq = _u_prime(x, yv, pv, qv)
    u_pr_qp = _u_prime(x, yv, qv, pv)
    gt1_pq = _gt1(x, yv, pv, qv, u_pr_pq)
    gt1_qp = gt1_pq if p == q else _gt1(x, yv, qv, pv, u_pr_qp)

    def gt_at(u, a, b, gt1):
        return _gt(x, yv, a, b, u, gt1)

    wp, wm = one - yv * up, one - yv * um
    ap, am = one - up, one - um
    prod = ap * am
    over_diff = quotient(prod, up - um)  # (1-u+)(1-u-)/(u+ - u-), an O(t) series
    gbt_p, gbt_m = _gbt(x, yv, pv, qv, up), _gbt(x, yv, pv, qv, um)

    term1 = yv * (yv - 1) * prod / (wp * wm)
    term2 = yv * yv * over_diff * (up * up * ap * gbt_p / (wp * wp) - um * um * am * gbt_m / (wm * wm))
    pair_p = (one - pv * ap) * gt_at(up, pv, qv, gt1_pq) + (one - qv * ap) * gt_at(up, qv, pv, gt1_qp)
    pair_m = (one - pv * am) * gt_at(um, pv, qv, gt1_pq) + (one - qv * am) * gt_at(um, qv, pv, gt1_qp)
    term3 = -yv * up * over_diff / wp * pair_p
    term4 = yv * um * over_diff / wm * pair_m
    if reading == "symmetric":
        last = gt1_pq + gt1_qp
    elif reading == "literal":
        last = gt1_pq + gt1_pq
    else:
        raise ValueError(f"unknown reading {reading!r}")
    term5 = yv * prod / (wp * wm) * last
    return _finish(term1 + term2 + term3 + term4 + term5, order)


# -- interpolation over the (p, q) grid ------------------------------------


def _basis(nodes: list[int]) -> list[list[Rational]]:
    """Coefficient lists of the Lagrange basis polynomials on ``nodes``."""
    out = []
    for i, xi in enumerate(nodes):
        poly = [Rational(1)]
        denom = Rational(1)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            nxt = [Rational(0)] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k + 1] += c
                nxt[k] -= xj * c
            poly = nxt
            denom *= xi - xj
        out.append([c / denom for c in poly])
    return out


def _interpolate(values: dict[int, Rational], basis) -> list[Rational]:
    coeffs = [Rational(0)] * len(basis)
    for i, row in enumerate(basis):
        v = values.get(i)
        if v:
            for k, c in enumerate(row):
                coeffs[k] += v * c
    return coeffs


def interpolate_pq(evaluate: Callable[[int, int], MultiSeries], degree: int, *,
                   symmetric_grid: bool = False) -> MultiSeries:
    """Rebuild a series polynomial in p and q from evaluations on an integer grid.

    ``evaluate(p, q)`` returns the series at those values; each coefficient
    must have degree at most ``degree`` in p and in q. One extra node per
    variable is used and its top coefficient must vanish.
    """
    nodes = list(range(degree + 2))
    basis = _basis(nodes)
    samples = {(i, j): evaluate(a, b) for i, a in enumerate(nodes) for j, b in enumerate(nodes)}
    first = next(iter(samples.values()))
    inner_vars = first.vars
    per_key: dict = defaultdict(dict)
    for (i, j), s in samples.items():
        for key, c in s.terms.items():
            per_key[key][(i, j)] = c
    terms = {}
    names = tuple(v for v in ("t", "x", "y", "p", "q", "u") if v in inner_vars or v in ("p", "q"))
    top = degree + 1
    for key, vals in per_key.items():
        # interpolate in q for each p node, then in p
        by_p = []
        for i in range(len(nodes)):
            by_p.append(_interpolate({j: vals[(i, j)] for j in range(len(nodes)) if (i, j) in vals}, basis))
        for k in range(len(nodes)):
            col = _interpolate({i: by_p[i][k] for i in range(len(nodes))}, basis)
            for e, c in enumerate(col):
                if c:
                    if e == top or k == top:
                        raise ArithmeticError("p, q degree exceeds the expected bound")
                    exps = dict(zip(inner_vars, key))
                    exps.update(p=e, q=k)
                    terms[tuple(exps[v] for v in names)] = c
    return MultiSeries(names, terms, caps=first.caps, total=first.total)


def gt_1(order: int, *, p=None, q=None) -> MultiSeries:
    """Top-directed convex polyominoes summed over the first column, series in x, y, p, q."""
    _order_ok(order, 2)
    if p is not None and q is not None:
        return _gt1_numeric(order, p, q)
    if p is None and q is None:
        return interpolate_pq(lambda a, b: _gt1_numeric(order, a, b), max(order - 2, 0))
    raise ValueError("fix both p and q or neither")


def gt_u(order: int, *, p=None, q=None) -> MultiSeries:
    """Top-directed convex polyominoes with the first column marked by ``u**(a-1)``."""
    _order_ok(order, 2)
    if p is not None and q is not None:
        return _gt_u_numeric(order, p, q)
    if p is None and q is None:
        return interpolate_pq(lambda a, b: _gt_u_numeric(order, a, b), max(order - 2, 0))
    raise ValueError("fix both p and q or neither")


def g1_full(order: int, *, p=None, q=None, y=None, reading: str = "symmetric") -> MultiSeries:
    """Convex polyominoes by columns, rows, bottom and top levels.

    ``reading`` selects how the last boundary term combines the two
    directed classes: ``"symmetric"`` adds the top-directed series at
    ``(p, q)`` and at ``(q, p)``; ``"literal"`` doubles the first.
    """
    _order_ok(order, 2)
    if p is not None and q is not None:
        return _g1_numeric(order, p, q, y, reading)
    if p is None and q is None:
        return interpolate_pq(lambda a, b: _g1_numeric(order, a, b, y, reading), max(order - 2, 0))
    raise ValueError("fix both p and q or neither")


def _a_poly(x: MultiSeries, q: MultiSeries) -> MultiSeries:
    q1 = q - 1
    q2 = q * q + 1
    cubic = q * (q * q * q * 3 + q * 10 - 2)
    quartic = q * q * q * q + q * q * 11 - q * 6 - 4
    return (x * 0 + 1
            - 3 * q2 * x
            + cubic * x ** 2
            - q2 * quartic * x ** 3
            + q1 * (6 * q ** 5 + 17 * q ** 3 - 7 * q * q - 5 * q - 3) * x ** 4
            - q2 * quartic * q1 ** 2 * x ** 5
            + cubic * q1 ** 4 * x ** 6
            - 3 * q2 * q1 ** 6 * x ** 7
            + q1 ** 8 * x ** 8)


def g1_xx_qq(order: int, *, q=None) -> MultiSeries:
    """Convex polyominoes by half-perimeter (x) and levels with p = q (q).

    Evaluated from the closed form built on the degree-8 polynomial ``A``.
    ``q="dual"`` evaluates on value/derivative pairs at q = 1.
    """
    _order_ok(order, 2)
    caps = {"q": 1} if q == "dual" else None
    vs = ["x", "q"] if q is None or q == "dual" else ["x"]
    R = _xring(order, vs, caps)
    x = R.gen("x")
    qv = R.gen("q") + 1 if q == "dual" else _param(R, q, "q")
    common = qv * qv * x * x - qv * qv * x - 2 * qv * x * x + x * x
    d1 = common - 3 * x + 1
    d2 = common + x + 1
    cub = (qv ** 3 * x * x - qv ** 3 * x - 3 * qv * qv * x * x + qv * qv * x + 3 * qv * x * x
           - qv * x - x * x + qv + x + 1)
    dd = d1 * d2
    first = x * x * _a_poly(x, qv) / (dd * dd)
    second = x ** 4 * cub * cub / (dd * dd.sqrt())
    return _finish(first - second, order)


def convex_carlitz_perimeter_dense(order: int) -> DenseSeries:
    """Convex Carlitz counts with the variable marking unit perimeter (even powers only)."""
    _order_ok(order, 1)
    P = DenseSeries.poly
    a = P([1, 0, -3, 0, 1], order)
    b = P([1, 0, 1, 0, 1], order)
    ab = a * b
    num1 = P([0, 0, 0, 0, 1, 0, -3, 0, 0, 0, 4, 0, 3, 0, 4, 0, 0, 0, -3, 0, 1], order)
    first = num1 / (ab * ab)
    sq = P([-1, 0, -1, 0, 1], order)
    second = DenseSeries.monomial(8, order) * sq * sq * ab.power(Rational(-3, 2))
    return first - second


def convex_carlitz_perimeter_gf(order: int) -> MultiSeries:
    """Univariate series in ``t`` (unit perimeter); only even powers are nonzero."""
    return convex_carlitz_perimeter_dense(order).to_multi("t")


def dq_g1_dense(order: int) -> DenseSeries:
    """Total of ``B + U`` over convex polyominoes, coefficient ``n`` = half-perimeter ``n``."""
    _order_ok(order, 1)
    P = DenseSeries.poly
    lin = P([1, -4], order)
    first = P([0, 0, 0, 2, -10, 20, -24, 32], order) / (lin * lin * lin)
    second = P([0, 0, 0, 0, -4, 0, 16], order) * lin.power(Rational(-5, 2))
    return first + second


def dq_g1_at_1(order: int) -> MultiSeries:
    return dq_g1_dense(order).to_multi("x")
