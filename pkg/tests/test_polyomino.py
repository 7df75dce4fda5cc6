from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz.polyomino import (CLASSES, BoundError, ColumnConvexPoly, CountTable, PolyStats,
                               count_by_stats, generate_column_convex, in_class, is_carlitz,
                               is_convex, refined_counts, stats)

ALL7 = list(generate_column_convex(7))


def P(*cols):
    return ColumnConvexPoly(tuple(cols))


class TestRepresentation:
    def test_rejects_gap(self):
        with pytest.raises(ValueError):
            P((0, 1), (1, 1))

    def test_rejects_empty_and_bad_height(self):
        with pytest.raises(ValueError):
            ColumnConvexPoly(())
        with pytest.raises(ValueError):
            P((0, 0))

    def test_first_bottom_at_origin(self):
        with pytest.raises(ValueError):
            P((1, 2))

    def test_from_cells(self):
        assert ColumnConvexPoly.from_cells({(3, 5), (3, 6), (4, 6)}) == P((0, 2), (1, 1))
        with pytest.raises(ValueError):
            ColumnConvexPoly.from_cells({(0, 0), (0, 2)})

    def test_cells_roundtrip(self):
        for poly in ALL7[:200]:
            assert ColumnConvexPoly.from_cells(poly.cells()) == poly


class TestStats:
    def test_single_cell(self):
        assert stats(P((0, 1))) == PolyStats(h=1, v=1, B=0, U=0, perimeter=4)

    def test_horizontal_domino(self):
        assert stats(P((0, 1), (0, 1))) == PolyStats(h=1, v=2, B=1, U=1, perimeter=6)

    def test_staircase(self):
        assert stats(P((0, 2), (1, 2))) == PolyStats(h=3, v=2, B=0, U=0, perimeter=10)

    def test_non_row_convex_counts_boundary(self):
        # in the second shape row 0 has a gap, so the vertical boundary has 2*3 edges on 2 rows
        s = stats(P((0, 1), (0, 2), (0, 1)))
        assert s.rows == 2 and s.h == 2
        s = stats(P((0, 2), (1, 1), (0, 2)))
        assert s.rows == 2 and s.h == 3

    def test_boundary_length(self):
        for poly in ALL7:
            cells = poly.cells()
            edges = sum((c + dc, r + dr) not in cells for c, r in cells
                        for dc, dr in ((1, 0), (-1, 0), (0, 1), (0, -1)))
            assert stats(poly).perimeter == edges

    def test_convex_h_is_row_count(self):
        for poly in ALL7:
            if is_convex(poly):
                assert stats(poly).h == stats(poly).rows


class TestPredicates:
    def test_carlitz(self):
        assert is_carlitz(P((0, 1)))
        assert not is_carlitz(P((0, 1), (0, 1)))
        assert is_carlitz(P((0, 2), (1, 2)))

    def test_convex(self):
        assert is_convex(P((0, 5)))
        assert not is_convex(P((0, 2), (1, 1), (0, 2)))
        assert is_convex(P((0, 3), (0, 2), (0, 1)))

    def test_directed_classes(self):
        stairs = P((0, 3), (0, 2), (0, 1))
        assert in_class(stairs, "convex-bt")
        up = P((0, 1), (0, 2))
        assert in_class(up, "convex-b") and not in_class(up, "convex-t")
        down = P((0, 2), (0, 1))
        assert in_class(down, "convex-bt")

    def test_unknown_class(self):
        with pytest.raises(ValueError):
            in_class(P((0, 1)), "snake")


class TestGenerator:
    def test_small(self):
        assert list(generate_column_convex(2)) == [P((0, 1))]
        assert len(list(generate_column_convex(3))) == 3

    def test_carlitz_counts(self):
        c = Counter(stats(p).n for p in generate_column_convex(6) if is_carlitz(p))
        assert [c[n] for n in range(2, 7)] == [1, 1, 1, 5, 14]

    def test_unique_and_ordered(self):
        assert len(set(ALL7)) == len(ALL7)
        assert [p.columns for p in ALL7] == sorted(p.columns for p in ALL7)

    def test_deterministic(self):
        assert list(generate_column_convex(6)) == list(generate_column_convex(6))

    def test_complete_against_cell_growth(self):
        # independent enumeration: grow cell sets one cell at a time, keep column-convex ones
        n = 6
        seen = set()
        frontier = {frozenset({(0, 0)})}
        limit_cells = 9
        while frontier:
            nxt = set()
            for cells in frontier:
                poly = _as_poly(cells)
                if poly is not None and stats(poly).n <= n:
                    seen.add(poly)
                if len(cells) < limit_cells:
                    for c, r in cells:
                        for dc, dr in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                            cell = (c + dc, r + dr)
                            if cell not in cells:
                                nxt.add(_normalise(cells | {cell}))
            frontier = nxt
        assert seen == set(generate_column_convex(n))

    def test_bound(self):
        with pytest.raises(BoundError):
            list(generate_column_convex(17))
        with pytest.raises(ValueError):
            list(generate_column_convex(1))
        assert len(list(generate_column_convex(5, safety_bound=5))) == 38


def _normalise(cells):
    c0 = min(c for c, _ in cells)
    r0 = min(r for c, r in cells if c == c0)
    return frozenset((c - c0, r - r0) for c, r in cells)


def _as_poly(cells):
    try:
        return ColumnConvexPoly.from_cells(cells)
    except ValueError:
        return None


class TestCounts:
    def test_convex_carlitz(self):
        assert count_by_stats(4, "convex", True).series() == [1, 1, 1]
        assert count_by_stats(5, "convex", True).counts[5] == 5

    def test_full_statistics(self):
        t = count_by_stats(3, "convex", full=True)
        assert t.polynomials[3] == {(0, 0): 1, (1, 1): 1}

    def test_pruned_equals_filtered(self):
        for cls in CLASSES:
            for carlitz in (False, True):
                want = Counter(stats(p).n for p in ALL7
                               if in_class(p, cls) and (not carlitz or is_carlitz(p)))
                got = count_by_stats(7, cls, carlitz).counts
                assert got == {n: want.get(n, 0) for n in range(2, 8)}

    def test_invariants(self):
        for p in ALL7:
            s = stats(p)
            assert s.perimeter == 2 * (s.h + s.v)
            assert 0 <= s.B <= s.v - 1 and 0 <= s.U <= s.v - 1

    def test_carlitz_at_most_all(self):
        for cls in ("cc", "convex"):
            a, c = count_by_stats(8, cls).counts, count_by_stats(8, cls, True).counts
            assert all(c[n] <= a[n] for n in a)

    def test_reflection(self):
        gen = set(ALL7)
        for p in ALL7:
            r = p.reflect()
            assert r in gen and r.reflect() == p
            s, sr = stats(p), stats(r)
            assert (s.h, s.v, s.B, s.U) == (sr.h, sr.v, sr.U, sr.B)
        for cls in ("cc", "convex"):
            for poly in count_by_stats(8, cls, full=True).polynomials.values():
                assert poly == {(u, b): c for (b, u), c in poly.items()}

    def test_workers_identical(self):
        a = count_by_stats(8, "cc", full=True)
        b = count_by_stats(8, "cc", full=True, workers=3)
        assert a.counts == b.counts and a.polynomials == b.polynomials

    def test_merge(self):
        a = CountTable(4, "cc", False, {2: 1, 3: 1}, {2: {(0, 0): 1}, 3: {(1, 1): 1}})
        b = CountTable(4, "cc", False, {3: 1}, {3: {(0, 0): 1}})
        m = a.merge(b)
        assert m.counts == {2: 1, 3: 2} and m.polynomials[3] == {(0, 0): 1, (1, 1): 1}

    def test_refined_by_first_height(self):
        r = refined_counts(5, "cc", by_first_height=True)
        assert r[(1, 1, 1, 0, 0)] == 1
        assert sum(v for k, v in r.items() if k[2] + k[1] == 5) == 28


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(ALL7) - 1))
def test_convex_iff_row_contiguous(i):
    p = ALL7[i]
    rows = {}
    for c, r in p.cells():
        rows.setdefault(r, []).append(c)
    expect = all(max(cs) - min(cs) + 1 == len(cs) for cs in rows.values())
    assert is_convex(p) == expect
