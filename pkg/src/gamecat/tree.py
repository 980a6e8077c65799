"""Finite nontrivial out-trees and their derived order structure.

An out-tree is a rooted oriented tree: exactly one node (the root) has no
incoming edge, every other node has exactly one. Decision nodes are those
with outgoing edges; runs are root-to-end paths, identified with their node
sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OperationError, ValidationError
from .terms import Term, encode, term_key


@dataclass(frozen=True, eq=False)
class OutTree:
    nodes: frozenset
    edges: frozenset  # of (src, tgt) pairs
    root: Term = field(repr=False)
    pred: dict = field(repr=False)      # node -> parent, on nodes - {root}
    children: dict = field(repr=False)  # node -> tuple of children in term order
    decision_nodes: frozenset = field(repr=False)
    end_nodes: frozenset = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, OutTree):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    __hash__ = None


def validate_out_tree(nodes, edges) -> OutTree:
    node_set = frozenset(nodes)
    edge_set = frozenset((x, y) for x, y in edges)
    if not node_set:
        raise ValidationError("NoRoot", detail="empty node set")

    for x, y in sorted(edge_set, key=lambda e: (term_key(e[0]), term_key(e[1]))):
        if x not in node_set or y not in node_set:
            raise ValidationError("DanglingEdge", witness=(x, y))
        if x == y:
            raise ValidationError("HasCycle", witness=(x, y))
        if (y, x) in edge_set:
            raise ValidationError("NotAntisymmetric", witness=(x, y))

    if not edge_set:
        raise ValidationError("Trivial")

    pred: dict = {}
    for x, y in sorted(edge_set, key=lambda e: (term_key(e[1]), term_key(e[0]))):
        if y in pred:
            raise ValidationError("HasCycle", witness=y,
                                  detail="node has two incoming edges")
        pred[y] = x

    roots = sorted(node_set - set(pred), key=term_key)
    if not roots:
        raise ValidationError("NoRoot")
    if len(roots) > 1:
        raise ValidationError("MultipleRoots", witness=tuple(roots))
    root = roots[0]

    children: dict = {x: [] for x in node_set}
    for x, y in edge_set:
        children[x].append(y)
    for x in children:
        children[x].sort(key=term_key)

    reached = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in children[x]:
            if y not in reached:
                reached.add(y)
                stack.append(y)
    if reached != node_set:
        missing = sorted(node_set - reached, key=term_key)
        # Every unreached node has a parent (roots were unique), so following
        # parents inside the unreached part must loop.
        seen = set()
        x = missing[0]
        while x not in seen:
            seen.add(x)
            x = pred[x]
            if x in reached:
                raise ValidationError("NotConnected", witness=missing[0])
        raise ValidationError("HasCycle", witness=x)

    decision = frozenset(x for x, _ in edge_set)
    return OutTree(
        nodes=node_set,
        edges=edge_set,
        root=root,
        pred=pred,
        children={x: tuple(children[x]) for x in node_set},
        decision_nodes=decision,
        end_nodes=node_set - decision,
    )


def _check_node(t: OutTree, x: Term):
    if x not in t.nodes:
        raise OperationError("UnknownNode", witness=x)


def strict_predecessors(t: OutTree, y: Term) -> list:
    """Nodes strictly before y on the root-to-y path, in root-to-y order."""
    _check_node(t, y)
    path = []
    x = y
    while x != t.root:
        x = t.pred[x]
        path.append(x)
    path.reverse()
    return path


def tree_leq(t: OutTree, x: Term, y: Term) -> bool:
    """True iff x lies on the root-to-y path at or before y."""
    _check_node(t, x)
    _check_node(t, y)
    z = y
    while True:
        if z == x:
            return True
        if z == t.root:
            return False
        z = t.pred[z]


def runs(t: OutTree):
    """All root-to-end paths as node sets, ordered by end-node encoding."""
    ends = sorted(t.end_nodes, key=lambda e: encode(e))
    out = []
    for e in ends:
        out.append(frozenset(strict_predecessors(t, e)) | {e})
    return out


def run_end(t: OutTree, run: frozenset) -> Term:
    """The unique end node of a run."""
    tail = run & t.end_nodes
    if len(tail) != 1:
        raise OperationError("NotARun", witness=run)
    return next(iter(tail))


def descendants(t: OutTree, x: Term) -> frozenset:
    """x and everything below it."""
    _check_node(t, x)
    out = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for z in t.children[y]:
            out.add(z)
            stack.append(z)
    return frozenset(out)
