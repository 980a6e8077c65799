"""Games: a CLT plus a move assignment and exact-rational utilities.

The mover map must be constant on information sets and its image is the
player set; utilities assign each player an exact rational on every run.
Utilities are keyed internally by the run's end node, since runs of a finite
tree biject with end nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .clt import CLT, validate_clt
from .errors import OperationError, ValidationError
from .terms import Atom, Term, term_key
from .tree import run_end, runs


@dataclass(frozen=True, eq=False)
class Game:
    clt: CLT
    mover: dict                      # decision node -> player
    players: frozenset = field(repr=False)  # image of mover
    utilities: dict = field(repr=False)     # (player, end node) -> Fraction
    player_nodes: dict = field(repr=False)  # player -> frozenset of nodes

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return (self.clt == other.clt and self.mover == other.mover
                and self.utilities == other.utilities)

    __hash__ = None

    @property
    def tree(self):
        return self.clt.tree

    def runs(self):
        return runs(self.clt.tree)

    def utility(self, i: Term, run: frozenset) -> Fraction:
        return self.utilities[(i, run_end(self.clt.tree, run))]


def validate_game(clt: CLT, mover, utilities) -> Game:
    w = clt.tree.decision_nodes
    mover = dict(mover)
    missing = sorted(w - set(mover), key=term_key)
    if missing:
        raise ValidationError("MoverMissing", witness=missing[0])
    extra = sorted(set(mover) - w, key=term_key)
    if extra:
        raise ValidationError("MoverMissing", witness=extra[0],
                              detail="mover assigned to a non-decision node")
    for cell in clt.sorted_infosets():
        members = sorted(cell, key=term_key)
        first = members[0]
        for x in members[1:]:
            if mover[x] != mover[first]:
                raise ValidationError("MoverNotConstant", witness=(first, x))

    players = frozenset(mover.values())
    all_runs = runs(clt.tree)
    ends = {run_end(clt.tree, z) for z in all_runs}
    run_by_end = {run_end(clt.tree, z): z for z in all_runs}

    table: dict = {}
    for key, value in utilities.items():
        i, where = key
        if isinstance(where, (frozenset, set)):
            node_set = frozenset(where)
            matched = None
            for end, z in run_by_end.items():
                if z == node_set:
                    matched = end
                    break
            if matched is None:
                raise ValidationError("UtilityExtraneous", witness=(i, node_set))
            end = matched
        else:
            end = where
        if i not in players or end not in ends:
            raise ValidationError("UtilityExtraneous", witness=(i, end))
        table[(i, end)] = Fraction(value)

    for i in sorted(players, key=term_key):
        for end in sorted(ends, key=term_key):
            if (i, end) not in table:
                raise ValidationError("UtilityMissing", witness=(i, run_by_end[end]))

    player_nodes = {i: frozenset(x for x in w if mover[x] == i) for i in players}
    return Game(clt=clt, mover=mover, players=players, utilities=table,
                player_nodes=player_nodes)


def one_player_zero_game(clt: CLT, player: Term = Atom("P1")) -> Game:
    """Wrap a CLT as a game: one player, zero utility on every run."""
    mover = {x: player for x in clt.tree.decision_nodes}
    utilities = {(player, z): 0 for z in runs(clt.tree)}
    return validate_game(clt, mover, utilities)


def ordinal_profile(g: Game, i: Term) -> dict:
    """Dense ranks of player i's utility over runs: 0 is best, ties share."""
    if i not in g.players:
        raise OperationError("UnknownPlayer", witness=i)
    zs = g.runs()
    values = sorted({g.utility(i, z) for z in zs}, reverse=True)
    rank = {v: k for k, v in enumerate(values)}
    return {z: rank[g.utility(i, z)] for z in zs}


def build_game(nodes, edges, infosets, mover, utilities) -> Game:
    """Convenience: validate the whole stack from raw parts.

    edges is a map (src, tgt) -> action label.
    """
    from .tree import validate_out_tree

    tree = validate_out_tree(nodes, set(edges))
    clt = validate_clt(tree, infosets, edges)
    return validate_game(clt, mover, utilities)
