"""Node-and-choice preforms ``(T, C, ⊗)`` and their derived entities."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .errors import P1Violation, P2Violation, P3Violation, UnknownNode, ValidationFailure
from .nodes import check_label, render_nodeset, sorted_nodes
from .tree import TreeDerived, validate_tree


@dataclass(frozen=True)
class PreformDerived:
    feasibility: frozenset
    root: object
    pred: Mapping
    prev_choice: Mapping
    info_sets: frozenset
    decision_nodes: frozenset
    tree_derived: TreeDerived
    choices: frozenset = frozenset()

    def feasible(self, t) -> frozenset:
        return frozenset(c for (s, c) in self.feasibility if s == t)

    def preimage(self, c) -> frozenset:
        return frozenset(s for (s, d) in self.feasibility if d == c)


@dataclass(frozen=True, eq=False)
class Preform:
    """A validated preform. Build instances with :func:`validate_preform`."""

    nodes: frozenset
    choices: frozenset
    edges: frozenset
    derived: PreformDerived = field(repr=False, compare=False)
    step: Mapping = field(repr=False, compare=False, default=None)

    def _key(self):
        return self.nodes, self.choices, self.edges

    def __eq__(self, other):
        return isinstance(other, Preform) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def root(self):
        return self.derived.root

    def apply(self, t, c):
        """The node ``t ⊗ c``; ``KeyError`` when ``(t, c)`` is not feasible."""
        return self.step[(t, c)]


def validate_preform(nodes, choices, edges) -> Preform:
    """Check [P1]-[P3] and return the validated preform.

    Exact duplicate edge triples are merged before any check runs.
    """
    nodes = frozenset(nodes)
    choices = frozenset(check_label(c) for c in choices)
    edges = frozenset(tuple(e) for e in edges)
    if not edges:
        raise P1Violation("the node-and-choice operator is empty")
    step = {}
    produced = {}
    for t, c, s in sorted(edges, key=lambda e: tuple(map(str, e))):
        if t not in nodes or s not in nodes:
            bad = t if t not in nodes else s
            raise P1Violation(f"edge ({t}, {c}, {s}) uses {bad}, which is not a node", witness=(t, c, s))
        if c not in choices:
            raise P1Violation(f"edge ({t}, {c}, {s}) uses {c}, which is not a choice", witness=(t, c, s))
        if (t, c) in step:
            raise P1Violation(
                f"pair ({t}, {c}) has two results {step[(t, c)]} and {s}",
                witness=((t, c, step[(t, c)]), (t, c, s)),
            )
        if s in produced:
            u, d = produced[s]
            raise P1Violation(
                f"node {s} is produced twice, by ({u}, {d}) and ({t}, {c})",
                witness=((u, d, s), (t, c, s)),
            )
        step[(t, c)] = s
        produced[s] = (t, c)
    missing = sorted_nodes(nodes - produced.keys())
    if len(missing) != 1:
        raise P1Violation(
            "the operator must reach every node but exactly one; unreached: "
            + (", ".join(map(str, missing)) or "none"),
            witness=tuple(missing),
        )
    pred = {s: t for (t, _c), s in step.items()}
    try:
        tree = validate_tree(nodes, pred)
    except ValidationFailure as exc:
        raise P2Violation(f"induced predecessor map is not a functioned tree ({exc})", witness=exc.witness, cause=exc)
    preimage = defaultdict(set)
    for t, c in step:
        preimage[c].add(t)
    for c in sorted(choices):
        if not preimage[c]:
            raise P3Violation(f"choice {c} is feasible nowhere, so its preimage is empty", witness=c)
    for c in sorted(choices):
        for d in sorted(choices):
            if c < d and preimage[c] & preimage[d] and preimage[c] != preimage[d]:
                raise P3Violation(
                    f"F⁻¹({c})∩F⁻¹({d}) ≠ ∅ but F⁻¹({c}) = {render_nodeset(preimage[c])} "
                    f"≠ F⁻¹({d}) = {render_nodeset(preimage[d])}",
                    witness=(c, d),
                )
    derived = PreformDerived(
        feasibility=frozenset(step),
        root=tree.root,
        pred=pred,
        prev_choice={s: c for (_t, c), s in step.items()},
        info_sets=frozenset(frozenset(v) for v in preimage.values()),
        decision_nodes=frozenset(pred.values()),
        tree_derived=tree.derived,
        choices=choices,
    )
    return Preform(nodes, choices, edges, derived=derived, step=step)


def derive_preform(pf: Preform) -> PreformDerived:
    return pf.derived


def feasible_at(derived: PreformDerived, t) -> frozenset:
    """The feasible choice set ``F(t)``; empty at terminal nodes."""
    if t not in derived.tree_derived.stage:
        raise UnknownNode(t)
    return derived.feasible(t)
