"""Subgames rooted at a decision node (Selten's construction).

The restriction of a labeled tree to a decision node and all its successors
is a valid CLT exactly when no information set straddles the boundary; the
failing information set is the witness otherwise. Subgame utilities are the
original utilities of the completed runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clt import CLT, validate_clt
from .errors import OperationError, ValidationError
from .game import Game, validate_game
from .morphism import GameMorphism, validate_game_morphism
from .terms import Term, term_key
from .tree import descendants, runs, validate_out_tree


@dataclass(frozen=True)
class SeltenResult:
    root: Term
    subgame: Game
    inclusion: GameMorphism


def selten_subclt(c: CLT, r: Term) -> CLT:
    if r not in c.tree.decision_nodes:
        raise OperationError("NotDecisionNode", witness=r)
    below = descendants(c.tree, r)
    for cell in c.sorted_infosets():
        if (cell & below) and (cell - below):
            raise ValidationError("NotExists", witness=cell)
    edges = {e: a for e, a in c.label.items() if e[0] in below and e[1] in below}
    tree = validate_out_tree(below, set(edges))
    infosets = [cell for cell in c.infosets if cell <= below]
    return validate_clt(tree, infosets, edges)


def selten_subgame(g: Game, r: Term) -> SeltenResult:
    sub_clt = selten_subclt(g.clt, r)
    below = sub_clt.tree.nodes
    mover = {x: g.mover[x] for x in sub_clt.tree.decision_nodes}
    players = set(mover.values())
    # A run of the subgame completes to the run of g with the same end node,
    # so utilities restrict by end node.
    utilities = {(i, end): v for (i, end), v in g.utilities.items()
                 if i in players and end in below}
    sub = validate_game(sub_clt, mover, utilities)
    inclusion = validate_game_morphism(sub, g, {x: x for x in below})
    return SeltenResult(root=r, subgame=sub, inclusion=inclusion)


def subgame_roots(g: Game):
    roots = set()
    for r in sorted(g.tree.decision_nodes, key=term_key):
        try:
            selten_subclt(g.clt, r)
        except ValidationError:
            continue
        roots.add(r)
    return roots


def is_selten_subgame(sub: Game, sup: Game) -> bool:
    """The four-part characterization: inclusion is a monomorphism with
    identity action transform and inclusion player transform; the node set
    is a node and all its successors; information sets and utilities are
    restrictions."""
    if not sub.tree.nodes <= sup.tree.nodes:
        return False
    r = sub.tree.root
    if r not in sup.tree.decision_nodes:
        return False
    if sub.tree.nodes != descendants(sup.tree, r):
        return False
    try:
        inc = validate_game_morphism(sub, sup, {x: x for x in sub.tree.nodes})
    except (ValidationError, OperationError):
        return False
    for cell, table in inc.clt_morphism.alpha.items():
        if any(table[a] != a for a in table):
            return False
    if any(inc.iota[i] != i for i in inc.iota):
        return False
    if not sub.clt.infosets <= sup.clt.infosets:
        return False
    for z in runs(sub.tree):
        for i in sub.players:
            if sub.utility(i, z) != sup.utility(i, inc.zeta[z]):
                return False
    return True
