"""Functioned trees: a node set together with an immediate-predecessor map."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import T1Violation, T2Violation
from .nodes import sorted_nodes


@dataclass(frozen=True)
class TreeDerived:
    root: object
    decision_nodes: frozenset
    stage: Mapping
    strict_prec: frozenset
    weak_prec: frozenset
    chains_finite: frozenset
    chains_infinite: frozenset = frozenset()


@dataclass(frozen=True, eq=False)
class Tree:
    """A validated functioned tree. Build instances with :func:`validate_tree`."""

    nodes: frozenset
    pred: Mapping
    derived: TreeDerived = field(repr=False, compare=False)

    def _key(self):
        return self.nodes, frozenset(self.pred.items())

    def __eq__(self, other):
        return isinstance(other, Tree) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def root(self):
        return self.derived.root

    def children(self, t) -> list:
        return sorted_nodes(s for s, u in self.pred.items() if u == t)


def validate_tree(nodes, pred: Mapping) -> Tree:
    """Check [T1] and [T2] and return the tree with its derived bundle.

    The root is inferred as the unique node outside the domain of ``pred``.
    """
    nodes = frozenset(nodes)
    pred = dict(pred)
    if not pred:
        raise T1Violation("predecessor function is empty", witness=None)
    for t, u in sorted(pred.items(), key=lambda kv: str(kv[0])):
        if t not in nodes:
            raise T1Violation(f"predecessor defined on {t}, which is not a node", witness=t)
        if u not in nodes:
            raise T1Violation(f"p({t}) = {u} is not a node", witness=(t, u))
    roots = sorted_nodes(nodes - pred.keys())
    if len(roots) != 1:
        if not roots:
            # every node has a predecessor, so iterating p must cycle
            raise T2Violation("no root: every node has a predecessor", witness=_find_cycle(pred, nodes))
        raise T1Violation(
            "domain of p must be all nodes but one; candidate roots " + ", ".join(map(str, roots)),
            witness=tuple(roots),
        )
    root = roots[0]
    stage = {root: 0}
    for t in sorted_nodes(nodes):
        path = []
        u = t
        while u not in stage:
            if u in path:
                raise T2Violation(f"cycle through {u} never reaches the root", witness=tuple(path[path.index(u):]))
            path.append(u)
            u = pred[u]
        k = stage[u]
        for v in reversed(path):
            k += 1
            stage[v] = k
    tree = Tree(nodes, pred, derived=None)
    object.__setattr__(tree, "derived", derive_tree(tree, stage))
    return tree


def _find_cycle(pred, nodes):
    start = sorted_nodes(nodes)[0]
    seen = []
    u = start
    while u not in seen:
        seen.append(u)
        u = pred[u]
    return tuple(seen[seen.index(u):])


def derive_tree(tree: Tree, stage: Mapping | None = None) -> TreeDerived:
    """Compute root, decision nodes, stages, precedence relations and maximal chains."""
    if stage is None and tree.derived is not None:
        return tree.derived
    pred = tree.pred
    root = next(iter(tree.nodes - pred.keys()))
    if stage is None:
        stage = {}
        for t in tree.nodes:
            k, u = 0, t
            while u != root:
                u, k = pred[u], k + 1
            stage[t] = k
    strict = set()
    for t in tree.nodes:
        u = t
        while u != root:
            u = pred[u]
            strict.add((u, t))
    weak = strict | {(t, t) for t in tree.nodes}
    decision = frozenset(pred.values())
    chains = set()
    for leaf in tree.nodes - decision:
        chain = {leaf}
        u = leaf
        while u != root:
            u = pred[u]
            chain.add(u)
        chains.add(frozenset(chain))
    return TreeDerived(
        root=root,
        decision_nodes=decision,
        stage=dict(stage),
        strict_prec=frozenset(strict),
        weak_prec=frozenset(weak),
        chains_finite=frozenset(chains),
        chains_infinite=frozenset(),
    )
