"""Game-shape predicates and constructive converters.

Each converter rebuilds the game in a normal form (distinguished actions,
sequence nodes, action-set nodes) and returns the rebuilt game together with
a certifying isomorphism from the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .game import Game
from .morphism import GameMorphism, compose, pushforward
from .terms import FinSet, Tup, term_key
from .tree import strict_predecessors, tree_leq


@dataclass(frozen=True)
class GameProperties:
    distinguished_actions: bool
    uses_sequences: bool
    uses_action_sets: bool
    no_absentmindedness: bool
    perfect_information: bool


@dataclass(frozen=True)
class ConversionResult:
    game: Game
    certificate: GameMorphism


def _distinguished(g: Game) -> bool:
    w = g.tree.decision_nodes
    for a in g.clt.actions:
        cell = frozenset(x for x in w if a in g.clt.feasible[x])
        if cell not in g.clt.infosets:
            return False
    return True


def _uses_sequences(g: Game) -> bool:
    t = g.tree
    if not all(isinstance(x, Tup) for x in t.nodes):
        return False
    if t.root != Tup(()):
        return False
    for (x, y), a in g.clt.label.items():
        if x.items != y.items[:-1] or y.items[-1] != a:
            return False
    return True


def _uses_action_sets(g: Game) -> bool:
    if not _distinguished(g):
        return False
    t = g.tree
    if not all(isinstance(x, FinSet) for x in t.nodes):
        return False
    if t.root != FinSet(()):
        return False
    for (x, y), a in g.clt.label.items():
        xs, ys = set(x.items), set(y.items)
        if not (xs < ys and len(ys - xs) == 1):
            return False
        if next(iter(ys - xs)) != a:
            return False
    return True


def _absentminded_witness(g: Game):
    for cell in g.clt.sorted_infosets():
        members = sorted(cell, key=term_key)
        for x in members:
            for y in members:
                if x != y and tree_leq(g.tree, x, y):
                    return (cell, x, y)
    return None


def properties(g: Game) -> GameProperties:
    return GameProperties(
        distinguished_actions=_distinguished(g),
        uses_sequences=_uses_sequences(g),
        uses_action_sets=_uses_action_sets(g),
        no_absentmindedness=_absentminded_witness(g) is None,
        perfect_information=all(len(c) == 1 for c in g.clt.infosets),
    )


def _identity_actions(g: Game):
    return {x: {a: a for a in g.clt.feasible[x]} for x in g.tree.decision_nodes}


def to_distinguished(g: Game) -> ConversionResult:
    """Tag each action with its information set, so distinct information
    sets get disjoint feasible sets."""
    action_bijs = {}
    for x in g.tree.decision_nodes:
        cell = g.clt.info_of[x]
        tag = FinSet(tuple(cell))
        action_bijs[x] = {a: Tup((tag, a)) for a in g.clt.feasible[x]}
    g2, cert = pushforward(g, {x: x for x in g.tree.nodes}, action_bijs,
                           {i: i for i in g.players})
    return ConversionResult(game=g2, certificate=cert)


def _sequence_name(g: Game, x) -> Tup:
    path = strict_predecessors(g.tree, x) + [x]
    labels = tuple(g.clt.label[(path[k], path[k + 1])] for k in range(len(path) - 1))
    return Tup(labels)


def to_sequence(g: Game) -> ConversionResult:
    """Rename each node to the tuple of edge labels on its root path."""
    node_bij = {x: _sequence_name(g, x) for x in g.tree.nodes}
    g2, cert = pushforward(g, node_bij, _identity_actions(g),
                           {i: i for i in g.players})
    return ConversionResult(game=g2, certificate=cert)


def to_distinguished_sequence(g: Game) -> ConversionResult:
    d = to_distinguished(g)
    s = to_sequence(d.game)
    return ConversionResult(game=s.game, certificate=compose(s.certificate, d.certificate))


def to_action_set(g: Game) -> ConversionResult:
    """Rename each node to the set of actions on its root path. Needs
    no-absentmindedness, else the path sets collide."""
    w = _absentminded_witness(g)
    if w is not None:
        raise ValidationError("Absentminded", witness=w)
    ds = to_distinguished_sequence(g)
    node_bij = {x: FinSet(x.items) for x in ds.game.tree.nodes}
    g2, cert = pushforward(ds.game, node_bij, _identity_actions(ds.game),
                           {i: i for i in ds.game.players})
    return ConversionResult(game=g2, certificate=compose(cert, ds.certificate))
