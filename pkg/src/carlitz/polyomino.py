"""Column-convex polyominoes: representation, statistics, brute-force generation.

A column-convex polyomino is stored as its columns from left to right, each
column a pair ``(b, h)``: the row index of its bottom cell and its number of
cells. The leftmost column always has ``b == 0``.

Variable convention used throughout the package: ``x`` marks columns and
``y`` marks the vertical half-perimeter ``h``. For a convex polyomino ``h`` is
the number of rows. For a column-convex polyomino that is not row-convex a
row can be entered and left several times, and ``h`` (half the number of
vertical unit edges on the boundary) exceeds the row count; ``2*(h + v)`` is
then the true boundary length, which is what the column recurrences and
closed forms count. ``PolyStats.rows`` keeps the plain row count.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

DEFAULT_SAFETY_BOUND = 16

CLASSES = ("cc", "convex", "convex-t", "convex-b", "convex-bt")
_CLASS_ALIASES = {
    "column-convex": "cc",
    "cc": "cc",
    "ccp": "cc",
    "convex": "convex",
    "cp": "convex",
    "convex-t": "convex-t",
    "cp-t": "convex-t",
    "convex-b": "convex-b",
    "cp-b": "convex-b",
    "convex-bt": "convex-bt",
    "cp-bt": "convex-bt",
}


class BoundError(ValueError):
    """Requested enumeration bound exceeds the configured safety limit."""


@dataclass(frozen=True)
class ColumnConvexPoly:
    columns: tuple[tuple[int, int], ...]

    def __post_init__(self):
        cols = tuple((int(b), int(h)) for b, h in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise ValueError("a polyomino needs at least one column")
        if cols[0][0] != 0:
            raise ValueError("the leftmost column must have its bottom cell at row 0")
        for b, h in cols:
            if h < 1:
                raise ValueError(f"column height {h} < 1")
        for (b0, h0), (b1, h1) in zip(cols, cols[1:]):
            if b1 > b0 + h0 - 1 or b1 + h1 - 1 < b0:
                raise ValueError(f"columns {(b0, h0)} and {(b1, h1)} do not share an edge")

    @classmethod
    def from_cells(cls, cells) -> ColumnConvexPoly:
        """Build from ``(column, row)`` cells; columns must be contiguous blocks."""
        by_col = defaultdict(list)
        for c, r in cells:
            by_col[c].append(r)
        cols = sorted(by_col)
        if cols != list(range(cols[0], cols[0] + len(cols))):
            raise ValueError("cells do not occupy consecutive columns")
        out = []
        for c in cols:
            rows = sorted(set(by_col[c]))
            if rows[-1] - rows[0] + 1 != len(rows):
                raise ValueError(f"column {c} is not a contiguous block")
            out.append((rows[0], len(rows)))
        b0 = out[0][0]
        return cls(tuple((b - b0, h) for b, h in out))

    def cells(self) -> set[tuple[int, int]]:
        return {(i, r) for i, (b, h) in enumerate(self.columns) for r in range(b, b + h)}

    def reflect(self) -> ColumnConvexPoly:
        """Upside-down flip, renormalised so the first bottom is row 0."""
        flipped = [(-(b + h), h) for b, h in self.columns]
        b0 = flipped[0][0]
        return ColumnConvexPoly(tuple((b - b0, h) for b, h in flipped))

    @property
    def first_height(self) -> int:
        return self.columns[0][1]

    def __len__(self):
        return len(self.columns)


@dataclass(frozen=True)
class PolyStats:
    h: int
    v: int
    B: int
    U: int
    perimeter: int
    rows: int = field(compare=False, default=0)

    @property
    def n(self) -> int:
        """Half-perimeter ``h + v``."""
        return self.h + self.v


def stats(poly: ColumnConvexPoly) -> PolyStats:
    cols = poly.columns
    h = sum(c[1] for c in cols)
    B = U = 0
    for (b0, h0), (b1, h1) in zip(cols, cols[1:]):
        h -= min(b0 + h0, b1 + h1) - max(b0, b1)
        if b0 == b1:
            B += 1
        if b0 + h0 == b1 + h1:
            U += 1
    v = len(cols)
    rows = max(b + hh for b, hh in cols) - min(b for b, _ in cols)
    return PolyStats(h=h, v=v, B=B, U=U, perimeter=2 * (h + v), rows=rows)


def is_carlitz(poly: ColumnConvexPoly) -> bool:
    s = stats(poly)
    return s.B == 0 and s.U == 0


def is_convex(poly: ColumnConvexPoly) -> bool:
    """Row scan: every occupied row meets a contiguous range of columns."""
    occupied = defaultdict(list)
    for i, (b, h) in enumerate(poly.columns):
        for r in range(b, b + h):
            occupied[r].append(i)
    return all(cols[-1] - cols[0] + 1 == len(cols) for cols in occupied.values())


def tops_nonincreasing(poly: ColumnConvexPoly) -> bool:
    tops = [b + h for b, h in poly.columns]
    return all(t1 <= t0 for t0, t1 in zip(tops, tops[1:]))


def bottoms_nondecreasing(poly: ColumnConvexPoly) -> bool:
    bots = [b for b, _ in poly.columns]
    return all(b1 >= b0 for b0, b1 in zip(bots, bots[1:]))


def normalize_class(name: str) -> str:
    try:
        return _CLASS_ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown polyomino class {name!r}; choose from {CLASSES}") from None


def in_class(poly: ColumnConvexPoly, cls: str) -> bool:
    """Membership in column-convex (``cc``), convex, or the directed convex subclasses.

    ``convex-t``: convex with column tops never rising to the right;
    ``convex-b``: convex with column bottoms never falling to the right;
    ``convex-bt``: both.
    """
    cls = normalize_class(cls)
    if cls == "cc":
        return True
    if not is_convex(poly):
        return False
    if cls in ("convex-t", "convex-bt") and not tops_nonincreasing(poly):
        return False
    if cls in ("convex-b", "convex-bt") and not bottoms_nondecreasing(poly):
        return False
    return True


# ---------------------------------------------------------------------------
# generation


def _check_bound(n: int, safety_bound: int | None) -> None:
    limit = DEFAULT_SAFETY_BOUND if safety_bound is None else safety_bound
    if n > limit:
        raise BoundError(f"half-perimeter bound {n} exceeds safety bound {limit}; pass a larger bound explicitly")


class _Prefix:
    """Incremental shape constraints, checked as each column is appended.

    Every constraint here is inherited by prefixes (a violation can never be
    repaired by adding columns), so a failing prefix prunes its subtree.
    """

    __slots__ = ("convex", "carlitz", "top_mono", "bot_mono")

    def __init__(self, cls: str, carlitz: bool):
        self.convex = cls != "cc"
        self.carlitz = carlitz
        self.top_mono = cls in ("convex-t", "convex-bt")
        self.bot_mono = cls in ("convex-b", "convex-bt")


def _walk(n: int, first_heights: Sequence[int] | None, prefix: _Prefix | None) -> Iterator[tuple]:
    """Yield (columns, h, v, B, U) for every admissible polyomino with h + v <= n.

    Depth-first, columns appended left to right in lexicographic order of
    ``(b, h)``; ``h`` only grows as columns are added, so ``h + v + 1 > n``
    stops the descent exactly.
    """
    heights = range(1, n) if first_heights is None else first_heights
    cols: list[tuple[int, int]] = []
    check_convex = prefix is not None and prefix.convex
    carlitz = prefix is not None and prefix.carlitz
    top_mono = prefix is not None and prefix.top_mono
    bot_mono = prefix is not None and prefix.bot_mono

    # convexity phases: bottoms fall then rise, tops rise then fall
    def rec(h, v, B, U, bot_rose, top_fell):
        yield tuple(cols), h, v, B, U
        if h + v + 1 > n:
            return
        b0, h0 = cols[-1]
        top0 = b0 + h0
        room = n - v - 1 - h  # allowed growth of h
        for b in range(b0 - (room + h0) + 1, top0):
            # new column (b, s) must overlap [b0, top0)
            s_min = max(1, b0 - b + 1)
            for s in range(s_min, room + h0 + 1):
                top = b + s
                overlap = min(top0, top) - max(b0, b)
                dh = s - overlap
                if dh > room:
                    if top >= top0:
                        break
                    continue
                eqb = b == b0
                eqt = top == top0
                if carlitz and (eqb or eqt):
                    continue
                if top_mono and top > top0:
                    break
                if bot_mono and b < b0:
                    break
                nb_rose, nt_fell = bot_rose, top_fell
                if check_convex:
                    if b > b0:
                        nb_rose = True
                    elif b < b0 and bot_rose:
                        continue
                    if top < top0:
                        nt_fell = True
                    elif top > top0 and top_fell:
                        break
                cols.append((b, s))
                yield from rec(h + dh, v + 1, B + eqb, U + eqt, nb_rose, nt_fell)
                cols.pop()

    for a in heights:
        if a + 1 > n:
            continue
        cols.append((0, a))
        yield from rec(a, 1, 0, 0, False, False)
        cols.pop()


def generate_column_convex(n: int, *, safety_bound: int | None = None,
                           first_heights: Sequence[int] | None = None) -> Iterator[ColumnConvexPoly]:
    """Every column-convex polyomino with half-perimeter ``h + v <= n``, each once.

    Order is lexicographic on the column sequence. ``first_heights`` restricts
    the leftmost column's height, which is how work is partitioned.
    """
    if n < 2:
        raise ValueError("half-perimeter bound must be at least 2")
    _check_bound(n, safety_bound)
    for cols, *_ in _walk(n, first_heights, None):
        yield ColumnConvexPoly(cols)


@dataclass
class CountTable:
    """Exact counts indexed by half-perimeter ``n = h + v``.

    ``polynomials[n]`` maps ``(B, U)`` to the number of polyominoes with
    those level counts (the coefficient polynomial in ``p**B * q**U``);
    it is filled only in full-statistics mode.
    """

    bound: int
    cls: str
    carlitz_only: bool
    counts: dict[int, int]
    polynomials: dict[int, dict[tuple[int, int], int]] | None = None

    def series(self) -> list[int]:
        return [self.counts.get(n, 0) for n in range(2, self.bound + 1)]

    def level_sum(self, n: int) -> int:
        """Total of ``B + U`` over the polyominoes counted at ``n``."""
        if self.polynomials is None:
            raise ValueError("level sums need full statistics")
        return sum((b + u) * c for (b, u), c in self.polynomials.get(n, {}).items())

    def merge(self, other: CountTable) -> CountTable:
        counts = Counter(self.counts)
        counts.update(other.counts)
        polys = None
        if self.polynomials is not None:
            polys = {}
            for src in (self.polynomials, other.polynomials or {}):
                for n, poly in src.items():
                    bucket = polys.setdefault(n, Counter())
                    bucket.update(poly)
            polys = {n: dict(sorted(c.items())) for n, c in sorted(polys.items())}
        return CountTable(self.bound, self.cls, self.carlitz_only,
                          dict(sorted(counts.items())), polys)


def _count_chunk(args) -> CountTable:
    n, cls, carlitz, full, heights = args
    counts: Counter = Counter()
    polys: dict[int, Counter] = defaultdict(Counter)
    for _, h, v, B, U in _walk(n, heights, _Prefix(cls, carlitz)):
        counts[h + v] += 1
        if full:
            polys[h + v][(B, U)] += 1
    table = CountTable(n, cls, carlitz, dict(sorted(counts.items())))
    if full:
        table.polynomials = {k: dict(sorted(c.items())) for k, c in sorted(polys.items())}
    return table


def count_by_stats(n: int, cls: str = "cc", carlitz_only: bool = False, *, full: bool = False,
                   safety_bound: int | None = None, workers: int = 1) -> CountTable:
    """Count polyominoes of a class by half-perimeter, optionally refined by (B, U).

    The class and Carlitz constraints are inherited by prefixes, so they are
    applied while generating instead of after; the result equals filtering
    :func:`generate_column_convex` with :func:`in_class` / :func:`is_carlitz`.
    ``workers > 1`` partitions by first-column height; the merged table is
    identical to the sequential one.
    """
    cls = normalize_class(cls)
    if n < 2:
        raise ValueError("half-perimeter bound must be at least 2")
    _check_bound(n, safety_bound)
    heights = list(range(1, n))
    if workers <= 1:
        table = _count_chunk((n, cls, carlitz_only, full, heights))
    else:
        jobs = [(n, cls, carlitz_only, full, [a]) for a in heights]
        table = CountTable(n, cls, carlitz_only, {}, {} if full else None)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_chunk, jobs):
                table = table.merge(part)
    for k in range(2, n + 1):
        table.counts.setdefault(k, 0)
    table.counts = dict(sorted(table.counts.items()))
    return table


def refined_counts(n: int, cls: str = "cc", carlitz_only: bool = False, *,
                   by_first_height: bool = False,
                   safety_bound: int | None = None) -> dict[tuple[int, ...], int]:
    """Counts keyed by ``(v, h, B, U)``, or ``(a, v, h, B, U)`` with first-column height ``a``.

    This is the full ``x^v y^h p^B q^U`` refinement used to check generating
    functions coefficient by coefficient.
    """
    cls = normalize_class(cls)
    _check_bound(n, safety_bound)
    out: Counter = Counter()
    for cols, h, v, B, U in _walk(n, None, _Prefix(cls, carlitz_only)):
        key = (v, h, B, U)
        if by_first_height:
            key = (cols[0][1],) + key
        out[key] += 1
    return dict(out)


def filtered(polys, predicate: Callable[[ColumnConvexPoly], bool]):
    return (p for p in polys if predicate(p))
