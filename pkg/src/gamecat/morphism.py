"""Morphisms of labeled trees and of games.

A tree-level morphism is a node map that preserves edges, never splits an
information set, and transforms actions identically across each information
set. A game morphism additionally preserves ends, movers (via a derived
player transformation), and the ordinal content of utilities. Validation
reports the first violated condition, in a fixed order, with a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .clt import CLT, validate_clt
from .errors import OperationError, ValidationError
from .game import Game, validate_game
from .terms import Atom, Term, encode_set, term_key
from .tree import run_end, runs, strict_predecessors, validate_out_tree


@dataclass(frozen=True, eq=False)
class CltMorphism:
    source: CLT
    target: CLT
    node_map: dict
    alpha: dict = field(repr=False)  # infoset cell -> {action -> action}

    def __eq__(self, other):
        if not isinstance(other, CltMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.node_map == other.node_map)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GameMorphism:
    source: Game
    target: Game
    clt_morphism: CltMorphism
    zeta: dict = field(repr=False)  # run -> run
    iota: dict = field(repr=False)  # player -> player

    def __eq__(self, other):
        if not isinstance(other, GameMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.node_map == other.node_map)

    __hash__ = None

    @property
    def node_map(self):
        return self.clt_morphism.node_map


def _sorted_nodes(nodes):
    return sorted(nodes, key=term_key)


def _sorted_edges(edges):
    return sorted(edges, key=lambda e: (term_key(e[0]), term_key(e[1])))


def validate_clt_morphism(src: CLT, tgt: CLT, node_map) -> CltMorphism:
    node_map = dict(node_map)
    for x in _sorted_nodes(src.tree.nodes):
        if x not in node_map:
            raise OperationError("BadNodeMap", witness=x, detail="node unmapped")
        if node_map[x] not in tgt.tree.nodes:
            raise OperationError("BadNodeMap", witness=x,
                                 detail="image is not a target node")
    extra = set(node_map) - src.tree.nodes
    if extra:
        raise OperationError("BadNodeMap", witness=_sorted_nodes(extra)[0],
                             detail="map key is not a source node")

    for x, y in _sorted_edges(src.tree.edges):
        if (node_map[x], node_map[y]) not in tgt.tree.edges:
            raise ValidationError("EdgeNotPreserved", witness=(x, y))

    for cell in src.sorted_infosets():
        images = {node_map[x] for x in cell}
        anchor = next(iter(images))
        target_cell = tgt.info_of.get(anchor)
        if target_cell is None or not images <= target_cell:
            raise ValidationError("InfosetSplit", witness=cell)

    alpha_at: dict = {}
    for x in _sorted_nodes(src.tree.decision_nodes):
        table = {}
        for a in sorted(src.feasible[x], key=term_key):
            y = src.next[(x, a)]
            table[a] = tgt.label[(node_map[x], node_map[y])]
        alpha_at[x] = table
    alpha: dict = {}
    for cell in src.sorted_infosets():
        members = _sorted_nodes(cell)
        first = members[0]
        for x in members[1:]:
            if alpha_at[x] != alpha_at[first]:
                raise ValidationError("ActionTransformNotConstant", witness=(first, x))
        alpha[cell] = alpha_at[first]

    return CltMorphism(source=src, target=tgt, node_map=node_map, alpha=alpha)


def action_at(m: CltMorphism, x: Term, a: Term) -> Term:
    if x not in m.source.tree.decision_nodes:
        raise OperationError("NotDecision", witness=x)
    table = m.alpha[m.source.info_of[x]]
    if a not in table:
        raise OperationError("NotFeasible", witness=(x, a))
    return table[a]


def validate_game_morphism(src: Game, tgt: Game, node_map) -> GameMorphism:
    cm = validate_clt_morphism(src.clt, tgt.clt, node_map)
    node_map = cm.node_map

    for x in _sorted_nodes(src.tree.end_nodes):
        if node_map[x] not in tgt.tree.end_nodes:
            raise ValidationError("NotEndPreserving", witness=x)

    prefix = frozenset(strict_predecessors(tgt.tree, node_map[src.tree.root]))
    target_runs = set(runs(tgt.tree))
    zeta: dict = {}
    for z in runs(src.tree):
        image = prefix | frozenset(node_map[x] for x in z)
        if image not in target_runs:
            raise ValidationError("NotEndPreserving", witness=run_end(src.tree, z),
                                  detail="run image is not a target run")
        zeta[z] = image

    iota: dict = {}
    chosen_at: dict = {}
    for x in _sorted_nodes(src.tree.decision_nodes):
        i = src.mover[x]
        i2 = tgt.mover[node_map[x]]
        if i in iota and iota[i] != i2:
            raise ValidationError("NoPlayerTransform", witness=(chosen_at[i], x))
        if i not in iota:
            iota[i] = i2
            chosen_at[i] = x

    src_runs = runs(src.tree)
    for i in sorted(src.players, key=term_key):
        for z1, z2 in itertools.product(src_runs, src_runs):
            if src.utility(i, z1) >= src.utility(i, z2):
                if not tgt.utility(iota[i], zeta[z1]) >= tgt.utility(iota[i], zeta[z2]):
                    raise ValidationError("UtilityNotPreserved", witness=(i, z1, z2))

    return GameMorphism(source=src, target=tgt, clt_morphism=cm, zeta=zeta, iota=iota)


def run_at(gm: GameMorphism, z: frozenset) -> frozenset:
    if z not in gm.zeta:
        raise OperationError("NotARun", witness=z)
    return gm.zeta[z]


def identity_clt_morphism(c: CLT) -> CltMorphism:
    return validate_clt_morphism(c, c, {x: x for x in c.tree.nodes})


def identity_morphism(g: Game) -> GameMorphism:
    return validate_game_morphism(g, g, {x: x for x in g.tree.nodes})


def compose(m2, m1):
    """The composite applying m1 first, then m2."""
    if isinstance(m1, GameMorphism) and isinstance(m2, GameMorphism):
        if m1.target != m2.source:
            raise OperationError("SourceTargetMismatch")
        node_map = {x: m2.node_map[v] for x, v in m1.node_map.items()}
        return validate_game_morphism(m1.source, m2.target, node_map)
    if isinstance(m1, CltMorphism) and isinstance(m2, CltMorphism):
        if m1.target != m2.source:
            raise OperationError("SourceTargetMismatch")
        node_map = {x: m2.node_map[v] for x, v in m1.node_map.items()}
        return validate_clt_morphism(m1.source, m2.target, node_map)
    raise OperationError("SourceTargetMismatch", detail="mixed morphism kinds")


def forget(gm: GameMorphism) -> CltMorphism:
    return gm.clt_morphism


def is_mono(m) -> bool:
    if isinstance(m, GameMorphism):
        images = set(m.zeta.values())
        return len(images) == len(m.zeta)
    images = set(m.node_map.values())
    return len(images) == len(m.node_map)


def clt_mono_witness(m: CltMorphism):
    """Two distinct morphisms from a two-node tree with equal composites,
    when the node map is not injective; None otherwise."""
    collision = None
    by_image: dict = {}
    for x in _sorted_nodes(m.source.tree.nodes):
        v = m.node_map[x]
        if v in by_image:
            collision = (by_image[v], x)
            break
        by_image[v] = x
    if collision is None:
        return None
    x1, x2 = collision
    # The root cannot collide: it strictly precedes every other node and
    # morphisms preserve strict order. So both nodes have predecessors.
    probe = _two_node_clt()
    n0, n1 = Atom("0*"), Atom("1*")
    pred = m.source.tree.pred
    theta1 = validate_clt_morphism(probe, m.source, {n0: pred[x1], n1: x1})
    theta2 = validate_clt_morphism(probe, m.source, {n0: pred[x2], n1: x2})
    return theta1, theta2


def _two_node_clt() -> CLT:
    n0, n1 = Atom("0*"), Atom("1*")
    tree = validate_out_tree({n0, n1}, {(n0, n1)})
    return validate_clt(tree, [{n0}], {(n0, n1): Atom("*")})


def mono_witness(gm: GameMorphism):
    """Two distinct game morphisms from a single-run path game with equal
    composites, when the run transformation is not injective; else None."""
    src_runs = runs(gm.source.tree)
    pair = None
    for i, z1 in enumerate(src_runs):
        for z2 in src_runs[i + 1:]:
            if gm.zeta[z1] == gm.zeta[z2]:
                pair = (z1, z2)
                break
        if pair:
            break
    if pair is None:
        return None
    z1, z2 = pair
    t = gm.source.tree
    path1 = strict_predecessors(t, run_end(t, z1)) + [run_end(t, z1)]
    path2 = strict_predecessors(t, run_end(t, z2)) + [run_end(t, z2)]
    # Equal run images force equal node-image chains, position by position.
    tau = gm.node_map
    assert len(path1) == len(path2)
    assert all(tau[a] == tau[b] for a, b in zip(path1, path2))

    probe = _path_game(path1)
    gamma1 = validate_game_morphism(probe, gm.source, {x: x for x in path1})
    delta = dict(zip(path1, path2))
    gamma2 = validate_game_morphism(probe, gm.source, delta)
    return gamma1, gamma2


def _path_game(path) -> Game:
    """Single-run game on the given node chain: singleton information sets,
    each decision node is its own player, zero utilities."""
    edges = {(path[k], path[k + 1]): Atom("*") for k in range(len(path) - 1)}
    tree = validate_out_tree(set(path), set(edges))
    clt = validate_clt(tree, [{x} for x in path[:-1]], edges)
    mover = {x: x for x in path[:-1]}
    utilities = {(x, frozenset(path)): 0 for x in path[:-1]}
    return validate_game(clt, mover, utilities)


def is_iso(m) -> bool:
    cached = getattr(m, "_iso_verdict", None)
    if cached is None:
        cached = _is_iso(m)
        object.__setattr__(m, "_iso_verdict", cached)
    return cached


def _is_iso(m) -> bool:
    if isinstance(m, GameMorphism):
        if not is_iso(m.clt_morphism):
            return False
        if len(set(m.iota.values())) != len(m.iota):
            return False
        src, tgt = m.source, m.target
        zs = runs(src.tree)
        for i in sorted(src.players, key=term_key):
            for z1, z2 in itertools.product(zs, zs):
                fwd = src.utility(i, z1) >= src.utility(i, z2)
                back = tgt.utility(m.iota[i], m.zeta[z1]) >= tgt.utility(m.iota[i], m.zeta[z2])
                if fwd != back:
                    return False
        return True
    if len(set(m.node_map.values())) != len(m.source.tree.nodes):
        return False
    if len(m.source.tree.nodes) != len(m.target.tree.nodes):
        return False
    cell_images = {frozenset(m.node_map[x] for x in cell) for cell in m.source.infosets}
    return cell_images == set(m.target.infosets)


def inverse(m):
    if not is_iso(m):
        raise OperationError("NotIso")
    inv_map = {v: x for x, v in m.node_map.items()}
    if isinstance(m, GameMorphism):
        return validate_game_morphism(m.target, m.source, inv_map)
    return validate_clt_morphism(m.target, m.source, inv_map)


def pushforward(g: Game, node_bij, action_bijs, player_bij):
    """Rebuild a game along bijections of nodes, actions, and players.

    Returns the rebuilt game and the certifying isomorphism from g to it.
    action_bijs maps each decision node to a bijection on its feasible set
    and must be constant across each information set.
    """
    node_bij = dict(node_bij)
    if set(node_bij) != set(g.tree.nodes) or len(set(node_bij.values())) != len(node_bij):
        raise OperationError("NotBijective", detail="node map")
    player_bij = dict(player_bij)
    if set(player_bij) != set(g.players) or len(set(player_bij.values())) != len(player_bij):
        raise OperationError("NotBijective", detail="player map")
    action_bijs = {x: dict(t) for x, t in action_bijs.items()}
    if set(action_bijs) != set(g.tree.decision_nodes):
        raise OperationError("NotBijective", detail="action maps must cover decision nodes")
    for x in _sorted_nodes(g.tree.decision_nodes):
        t = action_bijs[x]
        if set(t) != set(g.clt.feasible[x]) or len(set(t.values())) != len(t):
            raise OperationError("NotBijective", witness=x, detail="action map at node")
    for cell in g.clt.sorted_infosets():
        members = _sorted_nodes(cell)
        for x in members[1:]:
            if action_bijs[x] != action_bijs[members[0]]:
                raise OperationError("ActionBijsNotConstantOnInfoset",
                                     witness=(members[0], x))

    edges = {}
    for (x, y), a in g.clt.label.items():
        edges[(node_bij[x], node_bij[y])] = action_bijs[x][a]
    infosets = [frozenset(node_bij[x] for x in cell) for cell in g.clt.infosets]
    tree2 = validate_out_tree({node_bij[x] for x in g.tree.nodes}, set(edges))
    clt2 = validate_clt(tree2, infosets, edges)
    mover2 = {node_bij[x]: player_bij[i] for x, i in g.mover.items()}
    utilities2 = {(player_bij[i], node_bij[end]): v
                  for (i, end), v in g.utilities.items()}
    g2 = validate_game(clt2, mover2, utilities2)
    cert = validate_game_morphism(g, g2, node_bij)
    return g2, cert


def _node_signature(t, x, cache):
    if x in cache:
        return cache[x]
    kids = t.children[x]
    sizes = tuple(sorted(_subtree_size(t, k) for k in kids))
    sig = (len(strict_predecessors(t, x)), len(kids), _subtree_size(t, x), sizes)
    cache[x] = sig
    return sig


def _subtree_size(t, x):
    n = 1
    for k in t.children[x]:
        n += _subtree_size(t, k)
    return n


def iso_search(g1: Game, g2: Game):
    """Search for an isomorphism from g1 to g2; None when there is none.

    Backtracking over root-preserving node bijections, pruning by structural
    node signatures, infoset-size and mover-class counts, and per-player
    ordinal profiles. Any complete candidate is re-validated, so the pruning
    only affects speed. The returned witness is the lexicographically least
    node map under canonical encoding.
    """
    t1, t2 = g1.tree, g2.tree
    if len(t1.nodes) != len(t2.nodes) or len(t1.edges) != len(t2.edges):
        return None
    if len(t1.end_nodes) != len(t2.end_nodes):
        return None
    if len(g1.clt.infosets) != len(g2.clt.infosets):
        return None
    if sorted(len(c) for c in g1.clt.infosets) != sorted(len(c) for c in g2.clt.infosets):
        return None
    if len(g1.players) != len(g2.players):
        return None
    prof1 = sorted(sorted(p.values()) for p in
                   (_profile(g1, i) for i in g1.players))
    prof2 = sorted(sorted(p.values()) for p in
                   (_profile(g2, i) for i in g2.players))
    if prof1 != prof2:
        return None

    cache1: dict = {}
    cache2: dict = {}
    order = _sorted_nodes(t1.nodes)
    candidates = {}
    for x in order:
        sig = _node_signature(t1, x, cache1)
        cands = [v for v in _sorted_nodes(t2.nodes)
                 if _node_signature(t2, v, cache2) == sig]
        if x == t1.root:
            cands = [v for v in cands if v == t2.root]
        if not cands:
            return None
        candidates[x] = cands

    assignment: dict = {}
    used = set()

    def consistent(x, v):
        if x != t1.root:
            px = t1.pred[x]
            if px in assignment and t2.pred.get(v) != assignment[px]:
                return False
        for k in t1.children[x]:
            if k in assignment and t2.pred.get(assignment[k]) != v:
                return False
        return True

    def extend(idx):
        if idx == len(order):
            try:
                m = validate_game_morphism(g1, g2, dict(assignment))
            except ValidationError:
                return None
            return m if is_iso(m) else None
        x = order[idx]
        for v in candidates[x]:
            if v in used or not consistent(x, v):
                continue
            assignment[x] = v
            used.add(v)
            found = extend(idx + 1)
            if found is not None:
                return found
            del assignment[x]
            used.remove(v)
        return None

    return extend(0)


def _profile(g, i):
    from .game import ordinal_profile

    return ordinal_profile(g, i)
