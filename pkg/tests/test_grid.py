import itertools
from fractions import Fraction

import pytest

from gridspin import grid
from gridspin.grid import GridDiagram, GridError


def test_validate_accepts_unknot():
    G = grid.unknot2()
    assert G.n == 2 and G.o_rows == (1, 0) and G.x_rows == (0, 1)


@pytest.mark.parametrize(
    "args,code",
    [
        ((2, (0, 0), (1, 1)), "NotAPermutation"),
        ((2, (0, 1), (0, 1)), "SharedCell"),
        ((1, (0,), (0,)), "TooSmall"),
        ((3, (0, 1), (1, 0, 2)), "NotAPermutation"),
    ],
)
def test_validate_rejects(args, code):
    with pytest.raises(GridError) as err:
        GridDiagram(*args)
    assert err.value.code == code


def test_trace_components_unknot():
    c = grid.unknot2().components
    assert c.l == 1 and c.n_i == (2,)


def test_trace_components_two_component():
    c = GridDiagram(4, (1, 0, 3, 2), (0, 1, 2, 3)).components
    assert c.l == 2 and c.n_i == (2, 2)
    assert c.comp_of_o == (1, 1, 2, 2)


def test_components_partition_rows():
    import random

    rng = random.Random(0)
    for _ in range(30):
        G = grid.random_grid(rng.randint(2, 6), rng)
        c = G.components
        assert sum(c.n_i) == G.n
        assert sorted(set(c.comp_of_o)) == list(range(1, c.l + 1))
        # the first l numbered markers sit on distinct components
        assert len({c.comp_of_o[col] for col in c.o_numbering[: c.l]}) == c.l


def test_count_pairs_examples():
    assert grid.count_pairs_I([], [(0.5, 1.5)]) == 0
    assert grid.count_pairs_I([(0, 0), (1, 1)], [(0.5, 1.5), (1.5, 0.5)]) == 2
    assert grid.count_pairs_I([(0, 0), (1, 1)], [(0, 0), (1, 1)]) == 1
    A = [(0, 0), (1, 1)]
    assert grid.count_pairs_J(A, A) == grid.count_pairs_I(A, A)
    O = [(0.5, 1.5), (1.5, 0.5)]
    assert grid.count_pairs_J(A, O) == Fraction(1)
    assert grid.count_pairs_J(O, O) == 0


def test_count_pairs_formal_bilinearity():
    A = [(0, 0), (2, 2)]
    B = [(1, 1)]
    C = [(3, 0)]
    lhs = grid.count_pairs_J_formal([(1, A), (-2, B)], [(1, C)])
    rhs = grid.count_pairs_J(A, C) - 2 * grid.count_pairs_J(B, C)
    assert lhs == rhs


def test_maslov_unknot():
    G = grid.unknot2()
    assert grid.maslov(G, (0, 1)) == 0
    assert grid.maslov(G, (1, 0)) == -1


def test_maslov_with_x_markers():
    # computing against the X markers is the same formula, different set
    G = grid.unknot2()
    assert grid.maslov_x(G, (0, 1)) == grid.maslov(G, (0, 1), G._x_pts)


def test_alexander_unknot():
    G = grid.unknot2()
    assert grid.alexander2(G, (0, 1)) == (0,)
    assert grid.alexander2(G, (1, 0)) == (-2,)


def test_alexander_parity_constant_per_component():
    import random

    rng = random.Random(4)
    for _ in range(20):
        G = grid.random_grid(rng.randint(2, 5), rng)
        parities = None
        for x in itertools.permutations(range(G.n)):
            p = tuple(a % 2 for a in grid.alexander2(G, x))
            assert parities is None or p == parities
            parities = p


def test_rectangles_from():
    G = grid.unknot2()
    assert grid.rectangles_from(G, (0, 1)) == [((0, 1), (1, 0)), ((1, 0), (1, 0))]
    for n in (3, 4):
        G = next(grid.all_grids(n))
        for x in itertools.permutations(range(n)):
            rects = grid.rectangles_from(G, x)
            assert len(rects) == n * (n - 1)
            for (a, b), y in rects:
                assert y[a] == x[b] and y[b] == x[a]
                assert all(y[k] == x[k] for k in range(n) if k not in (a, b))


def test_realize_rectangle_spans():
    G = grid.unknot2()
    r = grid.realize_rectangle(G, (0, 1), (0, 1))
    assert r.col_span == (0,) and r.row_span == (0,)
    r = grid.realize_rectangle(G, (0, 1), (1, 0))
    assert r.col_span == (1,) and r.row_span == (1,)
    G3 = GridDiagram(3, (1, 2, 0), (0, 1, 2))
    r = grid.realize_rectangle(G3, (0, 1, 2), (0, 2))
    assert r.col_span == (0, 1) and r.row_span == (0, 1)
    assert r.corners_base == ((0, 0), (2, 2))


def test_complementary_rectangles():
    G3 = GridDiagram(3, (1, 2, 0), (0, 1, 2))
    for x in itertools.permutations(range(3)):
        for a in range(3):
            for b in range(3):
                if a == b:
                    continue
                r1 = grid.realize_rectangle(G3, x, (a, b))
                r2 = grid.realize_rectangle(G3, x, (b, a))
                assert r1.width + r2.width == 3
                assert r1.height + r2.height == 3
                assert set(r1.cells()).isdisjoint(r2.cells())


def test_is_empty():
    G = grid.unknot2()
    for label in ((0, 1), (1, 0)):
        assert grid.is_empty(G, (0, 1), grid.realize_rectangle(G, (0, 1), label))
    G3 = GridDiagram(3, (1, 2, 0), (0, 1, 2))
    r = grid.realize_rectangle(G3, (0, 1, 2), (0, 2))
    assert not grid.is_empty(G3, (0, 1, 2), r)


def test_marker_counts():
    G = grid.unknot2()
    oc, xc = grid.marker_counts(G, grid.realize_rectangle(G, (0, 1), (0, 1)))
    assert sum(oc) == 0 and sum(xc) == 1
    oc, xc = grid.marker_counts(G, grid.realize_rectangle(G, (1, 0), (0, 1)))
    assert sum(oc) == 1 and sum(xc) == 0
    # a full annulus of height one holds exactly one O and one X: compose
    # the two complementary rectangles of a pair
    G3 = GridDiagram(3, (1, 2, 0), (0, 1, 2))
    x = (0, 1, 2)
    r1 = grid.realize_rectangle(G3, x, (0, 1))
    y = (1, 0, 2)
    r2 = grid.realize_rectangle(G3, y, (1, 0))
    if r1.height == r2.height:  # same row band: horizontal annulus
        o1, x1 = grid.marker_counts(G3, r1)
        o2, x2 = grid.marker_counts(G3, r2)
        assert sum(o1) + sum(o2) == r1.height and sum(x1) + sum(x2) == r1.height


def test_is_horizontally_torn():
    assert not grid.is_horizontally_torn((0, 1))
    assert grid.is_horizontally_torn((1, 0))
    assert grid.is_horizontally_torn((3, 2))


def test_grading_drop_identities_exhaustive_n3():
    for G in grid.all_grids(3):
        comps = G.components
        for x in itertools.permutations(range(3)):
            M = grid.maslov(G, x)
            A = grid.alexander2(G, x)
            for label, y, ocols, xcols in grid.empty_rectangles(G, x):
                assert M - grid.maslov(G, y) == 1 - 2 * sum(ocols)
                Ay = grid.alexander2(G, y)
                for j in range(1, comps.l + 1):
                    xj = sum(xcols[c] for c in range(3) if comps.comp_of_x[c] == j)
                    oj = sum(ocols[c] for c in range(3) if comps.comp_of_o[c] == j)
                    assert A[j - 1] - Ay[j - 1] == 2 * (xj - oj)


def test_grid_counts():
    assert sum(1 for _ in grid.all_grids(2)) == 2
    assert sum(1 for _ in grid.all_grids(3)) == 12


def test_named_grids():
    assert grid.trefoil5().components.n_i == (5,)
    assert grid.hopf4().components.n_i == (2, 2)


def test_text_format_roundtrip():
    T = grid.trefoil5()
    text = grid.format_grid_text(T, comment="example")
    assert grid.parse_grid_text(text) == T


def test_text_format_errors():
    for text in ("n 2\nO 1 0\n", "n 2 3\nO 1 0\nX 0 1\n", "q 1\n", "n 2\nO 1 x\nX 0 1\n"):
        with pytest.raises(GridError):
            grid.parse_grid_text(text)


def test_ascii_art():
    art = grid.ascii_art(grid.unknot2())
    assert art.splitlines() == ["O X", "X O"]
