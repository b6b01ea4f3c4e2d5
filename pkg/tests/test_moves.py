import itertools
import random

import pytest

from gridspin import complexes, grid, moves, spin
from gridspin.grid import GridDiagram
from gridspin.moves import (
    MoveError,
    MoveSpec,
    apply_move,
    apply_script,
    invariance_report,
    parse_move,
    parse_script,
    phi_cyclic_horizontal,
    phi_cyclic_vertical,
)


def test_parse_move_lines():
    assert parse_move("cyclic up") == MoveSpec("cyclic", direction="up")
    assert parse_move("commute cols 3") == MoveSpec("commute_cols", index=3)
    assert parse_move("stabilize row 2 XNW") == MoveSpec(
        "stabilize", axis="row", index=2, marker="X", variant="NW"
    )
    assert parse_move("destabilize 1 2") == MoveSpec("destabilize", position=(1, 2))
    for bad in ("cyclic sideways", "commute cols x", "stabilize row 2 XQQ", "frobnicate"):
        with pytest.raises(MoveError):
            parse_move(bad)
    script = parse_script("# header\ncyclic up\n\ncommute rows 0 # tail\n")
    assert [m.kind for m in script] == ["cyclic", "commute_rows"]


def test_cyclic_round_trips():
    G = grid.trefoil5()
    assert apply_move(apply_move(G, MoveSpec("cyclic", direction="up")), MoveSpec("cyclic", direction="down")) == G
    H = G
    for _ in range(G.n):
        H = apply_move(H, MoveSpec("cyclic", direction="left"))
    assert H == G


def test_commutation_legality():
    # columns 0,1 of the 2x2 unknot have spans [0,1] and [0,1]: interleaved
    with pytest.raises(MoveError) as err:
        apply_move(grid.unknot2(), MoveSpec("commute_cols", index=0))
    assert err.value.code == "IllegalCommutation"
    # nested spans commute: column 0 spans rows [0,3], column 1 rows [1,2]
    G = GridDiagram(4, (0, 1, 2, 3), (3, 2, 0, 1))
    H = apply_move(G, MoveSpec("commute_cols", index=0))
    assert H.o_rows == (1, 0, 2, 3) and H.x_rows == (2, 3, 0, 1)
    with pytest.raises(MoveError) as err:
        apply_move(G, MoveSpec("commute_cols", index=9))
    assert err.value.code == "BadPosition"


def test_commutation_preserves_link():
    rng = random.Random(2)
    for _ in range(40):
        G = grid.random_grid(rng.randint(3, 6), rng)
        for mv in moves.legal_commutations(G):
            H = apply_move(G, mv)
            assert sorted(H.components.n_i) == sorted(G.components.n_i)


def test_stabilize_all_variants():
    G = grid.unknot2()
    for marker in "XO":
        for variant in moves.VARIANTS:
            H = apply_move(G, MoveSpec("stabilize", axis="row", index=0, marker=marker, variant=variant))
            assert H.n == 3 and H.components.l == 1
            assert H.components.n_i == (3,)


def test_stabilize_by_column():
    G = grid.trefoil5()
    H = apply_move(G, MoveSpec("stabilize", axis="col", index=2, marker="O", variant="SE"))
    assert H.n == 6 and H.components.n_i == (6,)


def test_destabilize_inverts_stabilize():
    rng = random.Random(8)
    for _ in range(80):
        n = rng.randint(2, 5)
        G = grid.random_grid(n, rng)
        marker = rng.choice("XO")
        variant = rng.choice(moves.VARIANTS)
        r = rng.randrange(n)
        H = apply_move(G, MoveSpec("stabilize", axis="row", index=r, marker=marker, variant=variant))
        rows = G.x_rows if marker == "X" else G.o_rows
        c = rows.index(r)
        assert apply_move(H, MoveSpec("destabilize", position=(c, r))) == G


def test_destabilize_rejects_non_blocks():
    with pytest.raises(MoveError):
        apply_move(grid.trefoil5(), MoveSpec("destabilize", position=(0, 0)))


def test_stabilization_grows_one_component_row():
    rng = random.Random(13)
    for _ in range(30):
        G = grid.random_grid(rng.randint(3, 5), rng)
        mv = moves.random_stabilization(G, rng)
        H = apply_move(G, mv)
        assert H.components.l == G.components.l
        assert sorted(H.components.n_i) != sorted(G.components.n_i) or G.components.l > 1
        assert sum(H.components.n_i) == sum(G.components.n_i) + 1


def _phi_commutes(G, H, phi, mono_map):
    n = G.n
    for perm in itertools.permutations(range(n)):
        for bit in (0, 1):
            x = spin.SpinElement(perm, bit)
            img = phi(x)
            lhs = {}
            sign_img = -1 if img.bit else 1
            for y, s, mono in complexes.differential_terms(H, img.perm):
                key = (y, mono)
                lhs[key] = lhs.get(key, 0) + s * sign_img
                if not lhs[key]:
                    del lhs[key]
            rhs = {}
            sign_x = -1 if bit else 1
            for y, s, mono in complexes.differential_terms(G, perm):
                iy = phi(spin.SpinElement(y, 0))
                key = (iy.perm, mono_map(mono))
                val = s * sign_x * (-1 if iy.bit else 1)
                rhs[key] = rhs.get(key, 0) + val
                if not rhs[key]:
                    del rhs[key]
            if lhs != rhs:
                return False
    return True


@pytest.mark.parametrize("n", [2, 3])
def test_phi_maps_are_chain_maps_small(n):
    for G in grid.all_grids(n):
        up = apply_move(G, MoveSpec("cyclic", direction="up"))
        right = apply_move(G, MoveSpec("cyclic", direction="right"))
        assert _phi_commutes(G, up, lambda g: phi_cyclic_vertical(G, g), lambda m: m)
        assert _phi_commutes(
            G,
            right,
            lambda g: phi_cyclic_horizontal(G, g),
            lambda m: tuple(m[(c - 1) % n] for c in range(n)),
        )


def test_phi_vertical_example():
    G = grid.unknot2()
    assert phi_cyclic_vertical(G, spin.spin_identity(2)) == spin.SpinElement((1, 0), 0)


def test_phi_horizontal_example():
    G = grid.unknot2()
    assert phi_cyclic_horizontal(G, spin.spin_identity(2)) == spin.SpinElement((1, 0), 1)


def test_phi_maps_are_bijections():
    G = GridDiagram(3, (1, 2, 0), (0, 1, 2))
    elems = list(spin.all_spin_elements(3))
    assert len({phi_cyclic_vertical(G, g) for g in elems}) == len(elems)
    assert len({phi_cyclic_horizontal(G, g) for g in elems}) == len(elems)


def test_phi_grading_shifts_zero():
    for G in (grid.unknot2(), GridDiagram(3, (1, 2, 0), (0, 1, 2)), grid.hopf4()):
        for which in ("vertical", "horizontal"):
            rep = moves.phi_grading_shifts(G, which)
            assert rep.maslov_shift == 0
            assert rep.alexander2_shift == (0,) * G.components.l


def test_invariance_unknot_stabilization():
    G = grid.unknot2()
    H = apply_move(G, MoveSpec("stabilize", axis="row", index=0, marker="X", variant="NE"))
    rep = invariance_report(G, H)
    assert rep.ok and rep.hat_equal and rep.tilde_factor_ok
    assert rep.stabilized_component == 1


def test_invariance_detects_difference():
    rep = invariance_report(grid.unknot2(), grid.trefoil5())
    assert not rep.hat_equal and not rep.ok


def test_invariance_renumbered_components():
    # swapping which component is numbered first must not matter
    G = grid.hopf4()
    H = apply_move(apply_move(G, MoveSpec("cyclic", direction="left")), MoveSpec("cyclic", direction="left"))
    rep = invariance_report(G, H)
    assert rep.hat_equal


def test_apply_script_roundtrip():
    G = grid.trefoil5()
    script = parse_script("cyclic up\ncyclic left\ncyclic right\ncyclic down\n")
    assert apply_script(G, script) == G


def test_six_random_legal_moves_preserve_hat():
    rng = random.Random(99)
    for _ in range(2):
        G = grid.random_grid(rng.randint(3, 5), rng)
        H = G
        for _ in range(6):
            H = apply_move(H, moves.random_move(H, rng, max_n=7))
        rep = invariance_report(G, H)
        assert rep.hat_equal, (G, H)
