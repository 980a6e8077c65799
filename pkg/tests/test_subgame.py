import random

import pytest

from gamecat import (Atom, OperationError, ValidationError, identity_morphism,
                     is_selten_subgame, one_player_zero_game, selten_subclt,
                     selten_subgame, subgame_roots)
from examplegames import A, trio_a, nested, innerwrap, flatten, make_game
from genrandom import random_game, relabel_iso


def test_subclt_at_inner_singleton_root():
    g = nested()
    sub = selten_subclt(g.clt, A(24))
    assert len(sub.tree.nodes) == 3
    assert sub.tree.root == A(24)


def test_subclt_at_root_is_the_whole_clt():
    g = nested()
    assert selten_subclt(g.clt, A(0)) == g.clt


def test_subclt_fails_on_straddled_infoset():
    g = nested()
    with pytest.raises(ValidationError) as e:
        selten_subclt(g.clt, A(11))
    assert e.value.code == "NotExists"
    assert e.value.witness == frozenset({A(11), A(12)})


def test_subclt_requires_a_decision_node():
    g = nested()
    with pytest.raises(OperationError) as e:
        selten_subclt(g.clt, A(21))
    assert e.value.code == "NotDecisionNode"
    with pytest.raises(OperationError):
        selten_subclt(g.clt, A(99))


def test_subgame_at_root_is_the_game_itself():
    for g in (trio_a(), nested()):
        res = selten_subgame(g, g.tree.root)
        assert res.subgame == g
        assert res.inclusion == identity_morphism(g)


def test_subgame_fails_like_subclt():
    g = nested()
    with pytest.raises(ValidationError) as e:
        selten_subgame(g, A(11))
    assert e.value.code == "NotExists"


def test_subgame_utilities_are_the_completed_run_utilities():
    g = make_game({(0, 1): "a", (1, 2): "b", (1, 3): "c"},
                  [{0}, {1}], {0: "P1", 1: "P1"},
                  {("P1", 2): 5, ("P1", 3): 7})
    res = selten_subgame(g, A(1))
    sub = res.subgame
    assert sub.tree.nodes == frozenset({A(1), A(2), A(3)})
    assert sub.utility(A("P1"), frozenset({A(1), A(2)})) == \
        g.utility(A("P1"), frozenset({A(0), A(1), A(2)}))
    assert res.inclusion.zeta[frozenset({A(1), A(2)})] == \
        frozenset({A(0), A(1), A(2)})


def test_subgame_roots_examples():
    assert subgame_roots(nested()) == {A(0), A(24)}
    # the shared information set {3,4} straddles every proper subtree, so
    # the root is the only node with a subgame
    assert subgame_roots(trio_a()) == {A(0)}


def test_selten_characterization_accepts_real_subgames():
    g = trio_a()
    for r in subgame_roots(g):
        res = selten_subgame(g, r)
        assert is_selten_subgame(res.subgame, g)


def test_selten_characterization_rejects_infoset_mismatch():
    # same tree restriction, but the small game keeps an information set
    # absent from the big one
    small, big = innerwrap()
    assert not is_selten_subgame(small, big)


def test_selten_characterization_rejects_utility_mismatch():
    g1, g2 = flatten()
    assert not is_selten_subgame(g1, g2)


def test_subgame_roots_transported_by_isomorphisms():
    rng = random.Random(31)
    for _ in range(15):
        g = random_game(rng, max_nodes=10)
        g2, cert = relabel_iso(rng, g)
        tau = cert.node_map
        assert subgame_roots(g2) == {tau[r] for r in subgame_roots(g)}


def test_random_subgames_pass_the_characterization():
    rng = random.Random(37)
    for _ in range(15):
        g = random_game(rng, max_nodes=10)
        for r in subgame_roots(g):
            res = selten_subgame(g, r)
            assert is_selten_subgame(res.subgame, g)
