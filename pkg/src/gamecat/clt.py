"""Continuously labeled trees.

A CLT adds to an out-tree a partition of the decision nodes into information
sets and a deterministic edge labeling. "Continuous" always means constant on
partition cells, so the feasibility requirement is that two nodes in one
information set offer the same actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OperationError, ValidationError
from .terms import Term, encode_set, term_key
from .tree import OutTree


@dataclass(frozen=True, eq=False)
class CLT:
    tree: OutTree
    infosets: frozenset  # of frozenset cells
    label: dict          # (src, tgt) edge -> action
    actions: frozenset = field(repr=False)   # image of label
    feasible: dict = field(repr=False)       # decision node -> frozenset of actions
    next: dict = field(repr=False)           # (node, action) -> node
    info_of: dict = field(repr=False)        # decision node -> its cell

    def __eq__(self, other):
        if not isinstance(other, CLT):
            return NotImplemented
        return (self.tree == other.tree and self.infosets == other.infosets
                and self.label == other.label)

    __hash__ = None

    @property
    def decision_nodes(self):
        return self.tree.decision_nodes

    def sorted_infosets(self):
        return sorted(self.infosets, key=encode_set)


def validate_clt(tree: OutTree, infosets, label) -> CLT:
    label = dict(label)
    if set(label) != set(tree.edges):
        bad = sorted(set(label) ^ set(tree.edges),
                     key=lambda e: (term_key(e[0]), term_key(e[1])))
        raise ValidationError("LabelBad", witness=bad[0],
                              detail="labeling must cover exactly the edge set")

    cells = [frozenset(c) for c in infosets]
    w = tree.decision_nodes
    seen: dict = {}
    for cell in sorted(cells, key=encode_set):
        if not cell:
            raise ValidationError("PartitionBad", detail="empty information set")
        if not cell <= w:
            extra = sorted(cell - w, key=term_key)[0]
            raise ValidationError("PartitionBad", witness=extra,
                                  detail="information set contains a non-decision node")
        for x in cell:
            if x in seen and seen[x] != cell:
                raise ValidationError("PartitionBad", witness=x,
                                      detail="node in two information sets")
            seen[x] = cell
    uncovered = sorted(w - set(seen), key=term_key)
    if uncovered:
        raise ValidationError("PartitionBad", witness=uncovered[0],
                              detail="decision node in no information set")

    nxt: dict = {}
    feasible: dict = {x: set() for x in w}
    for x, y in sorted(tree.edges, key=lambda e: (term_key(e[0]), term_key(e[1]))):
        a = label[(x, y)]
        if (x, a) in nxt:
            raise ValidationError("NonDeterministic", witness=(x, a))
        nxt[(x, a)] = y
        feasible[x].add(a)
    feasible = {x: frozenset(s) for x, s in feasible.items()}

    for cell in sorted(cells, key=encode_set):
        members = sorted(cell, key=term_key)
        first = members[0]
        for x in members[1:]:
            if feasible[x] != feasible[first]:
                raise ValidationError("FeasibilityNotConstant", witness=(first, x))

    return CLT(
        tree=tree,
        infosets=frozenset(cells),
        label=label,
        actions=frozenset(label.values()),
        feasible=feasible,
        next=nxt,
        info_of=seen,
    )


def next_node(c: CLT, x: Term, a: Term) -> Term:
    if x not in c.tree.decision_nodes:
        raise OperationError("NotDecision", witness=x)
    if a not in c.feasible[x]:
        raise OperationError("NotFeasible", witness=(x, a))
    return c.next[(x, a)]
