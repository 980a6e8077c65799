import random
from fractions import Fraction

import pytest

from gamecat import (Atom, ValidationError, build_game, one_player_zero_game,
                     ordinal_profile, validate_game)
from examplegames import A, trio_a, trio_b, collapse, make_clt, make_game
from genrandom import random_game


def run_of(g, *nodes):
    return frozenset(A(n) for n in nodes)


def test_three_player_game_is_valid():
    g = trio_a()
    assert g.players == frozenset({A("P1"), A("P2"), A("P3")})
    assert g.mover[A(3)] == A("P3") and g.mover[A(4)] == A("P3")
    assert g.utility(A("P1"), run_of(g, 0, 3, 5)) == 1
    assert g.player_nodes[A("P3")] == frozenset({A(3), A(4)})


def test_mover_must_cover_and_be_constant():
    clt = make_clt({(0, 1): "a", (1, 2): "b"}, [{0}, {1}])
    with pytest.raises(ValidationError) as e:
        validate_game(clt, {A(0): A("P1")}, {})
    assert e.value.code == "MoverMissing"

    clt2 = make_clt({(0, 3): "a", (0, 1): "b", (1, 4): "a", (1, 2): "b"},
                    [{0, 1}])
    with pytest.raises(ValidationError) as e:
        validate_game(clt2, {A(0): A("P1"), A(1): A("P2")}, {})
    assert e.value.code == "MoverNotConstant"


def test_utilities_must_cover_all_runs_and_players():
    clt = make_clt({(0, 1): "a", (0, 2): "b"}, [{0}])
    with pytest.raises(ValidationError) as e:
        validate_game(clt, {A(0): A("P1")}, {(A("P1"), A(1)): 0})
    assert e.value.code == "UtilityMissing"
    with pytest.raises(ValidationError) as e:
        validate_game(clt, {A(0): A("P1")},
                      {(A("P1"), A(1)): 0, (A("P1"), A(2)): 0,
                       (A("P2"), A(1)): 0})
    assert e.value.code == "UtilityExtraneous"


def test_utilities_accept_run_sets():
    clt = make_clt({(0, 1): "a", (0, 2): "b"}, [{0}])
    g = validate_game(clt, {A(0): A("P1")},
                      {(A("P1"), frozenset({A(0), A(1)})): Fraction(1, 3),
                       (A("P1"), A(2)): 2})
    assert g.utility(A("P1"), frozenset({A(0), A(1)})) == Fraction(1, 3)


def test_one_player_zero_game():
    src, _, _ = collapse()
    assert src.players == frozenset({A("P1")})
    assert all(v == 0 for v in src.utilities.values())


def test_ordinal_profile_values():
    g = trio_a()
    prof = ordinal_profile(g, A("P1"))
    assert prof[run_of(g, 0, 3, 5)] == 0
    assert prof[run_of(g, 0, 1, 4, 8)] == 2
    middles = [run_of(g, 0, 1, 2), run_of(g, 0, 3, 6), run_of(g, 0, 1, 4, 7)]
    assert all(prof[z] == 1 for z in middles)


def test_ordinal_profile_is_shared_across_cardinal_variants():
    a, b = trio_a(), trio_b()
    for i in a.players:
        assert ordinal_profile(a, i) == ordinal_profile(b, i)


def test_ordinal_profile_invariant_under_affine_rescale():
    rng = random.Random(11)
    for _ in range(20):
        g = random_game(rng, max_nodes=9)
        i = min(g.players, key=lambda t: t.name)
        scaled = {(j, e): (2 * v + 1 if j == i else v)
                  for (j, e), v in g.utilities.items()}
        g2 = build_game(g.tree.nodes, dict(g.clt.label), g.clt.infosets,
                        g.mover, scaled)
        for j in g.players:
            assert ordinal_profile(g, j) == ordinal_profile(g2, j)


def test_game_equality_is_structural():
    g1 = make_game({(0, 1): "a", (0, 2): "b"}, [{0}], {0: "P1"},
                   {("P1", 1): 0, ("P1", 2): 1})
    g2 = make_game({(0, 1): "a", (0, 2): "b"}, [{0}], {0: "P1"},
                   {("P1", 1): 0, ("P1", 2): 1})
    g3 = make_game({(0, 1): "a", (0, 2): "b"}, [{0}], {0: "P1"},
                   {("P1", 1): 0, ("P1", 2): 2})
    assert g1 == g2
    assert g1 != g3
