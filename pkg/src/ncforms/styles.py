"""Choice-sequence and choice-set node machinery, style recognition, and
closed-form derivations for preforms in those styles.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import LengthOutOfRange, NotChoiceSequence, NotChoiceSet
from .nodes import SeqNode, SetNode, sorted_nodes
from .preform import Preform, PreformDerived
from .tree import TreeDerived


class Verdict(NamedTuple):
    """A boolean answer paired with the witness explaining a negative one."""

    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def concat(t: SeqNode, s: SeqNode) -> SeqNode:
    return SeqNode(t.items + s.items)


def seq_range(t: SeqNode) -> frozenset:
    return frozenset(t.items)


def initial_segment(t: SeqNode, length: int) -> SeqNode:
    if not 0 <= length <= len(t):
        raise LengthOutOfRange(f"initial segment of length {length} of {t} (length {len(t)})")
    return SeqNode(t.items[:length])


def is_csq_preform(pf: Preform) -> Verdict:
    for t in sorted_nodes(pf.nodes):
        if not isinstance(t, SeqNode):
            return Verdict(False, t)
    if SeqNode(()) not in pf.nodes:
        return Verdict(False, SeqNode(()))
    for e in sorted(pf.edges, key=lambda e: tuple(map(str, e))):
        t, c, s = e
        if t.items + (c,) != s.items:
            return Verdict(False, e)
    return Verdict(True)


def is_cset_preform(pf: Preform) -> Verdict:
    for t in sorted_nodes(pf.nodes):
        if not isinstance(t, SetNode):
            return Verdict(False, t)
    if SetNode(frozenset()) not in pf.nodes:
        return Verdict(False, SetNode(frozenset()))
    for e in sorted(pf.edges, key=lambda e: tuple(map(str, e))):
        t, c, s = e
        if t.items | {c} != s.items:
            return Verdict(False, e)
    return Verdict(True)


def _chains_from_leaves(nodes, decision, below) -> frozenset:
    return frozenset(
        frozenset(s for s in nodes if below(s, leaf)) for leaf in nodes if leaf not in decision
    )


def csq_fast_derive(pf: Preform) -> PreformDerived:
    """Derived entities read off the sequences themselves.

    Root is the empty sequence, predecessor drops the last item, previous
    choice is the last item, stage is length, and precedence is the proper
    initial-segment relation.
    """
    if not is_csq_preform(pf):
        raise NotChoiceSequence(f"not a choice-sequence preform (witness {is_csq_preform(pf).witness})")
    nodes = pf.nodes
    choices = frozenset(c for t in nodes for c in t.items)
    feasibility = frozenset((t, c) for t in nodes for c in choices if SeqNode(t.items + (c,)) in nodes)
    root = SeqNode(())
    pred = {t: SeqNode(t.items[:-1]) for t in nodes if t.items}
    prev_choice = {t: t.items[-1] for t in nodes if t.items}

    def weakly_below(a, b):
        return len(a) <= len(b) and b.items[: len(a)] == a.items

    strict = frozenset((a, b) for a in nodes for b in nodes if len(a) < len(b) and weakly_below(a, b))
    weak = frozenset((a, b) for a in nodes for b in nodes if weakly_below(a, b))
    decision = frozenset(t for t, _c in feasibility)
    info_sets = frozenset(frozenset(t for t, d in feasibility if d == c) for c in choices)
    td = TreeDerived(
        root=root,
        decision_nodes=decision,
        stage={t: len(t) for t in nodes},
        strict_prec=strict,
        weak_prec=weak,
        chains_finite=_chains_from_leaves(nodes, decision, weakly_below),
        chains_infinite=frozenset(),
    )
    return PreformDerived(feasibility, root, pred, prev_choice, info_sets, decision, td, choices)


def cset_fast_derive(pf: Preform) -> PreformDerived:
    """Derived entities read off the sets: stage is cardinality, precedence is
    strict inclusion, and ``t ⊗ c = t ∪ {c}`` for ``c ∉ t``.
    """
    if not is_cset_preform(pf):
        raise NotChoiceSet(f"not a choice-set preform (witness {is_cset_preform(pf).witness})")
    nodes = pf.nodes
    choices = frozenset().union(*(t.items for t in nodes))
    feasibility = frozenset(
        (t, c) for t in nodes for c in choices if c not in t.items and SetNode(t.items | {c}) in nodes
    )
    edges = {(t, c, SetNode(t.items | {c})) for t, c in feasibility}
    root = SetNode(frozenset())
    pred = {s: t for t, _c, s in edges}
    prev_choice = {s: c for _t, c, s in edges}

    def weakly_below(a, b):
        return a.items <= b.items

    strict = frozenset((a, b) for a in nodes for b in nodes if a.items < b.items)
    weak = frozenset((a, b) for a in nodes for b in nodes if a.items <= b.items)
    decision = frozenset(t for t, _c in feasibility)
    info_sets = frozenset(frozenset(t for t, d in feasibility if d == c) for c in choices)
    td = TreeDerived(
        root=root,
        decision_nodes=decision,
        stage={t: len(t) for t in nodes},
        strict_prec=strict,
        weak_prec=weak,
        chains_finite=_chains_from_leaves(nodes, decision, weakly_below),
        chains_infinite=frozenset(),
    )
    return PreformDerived(feasibility, root, pred, prev_choice, info_sets, decision, td, choices)


def adjoin_conditions(universe, t, c, t_next) -> tuple:
    """Four equivalent descriptions of ``t_next`` adjoining ``c`` to ``t``.

    Arguments are plain sets (or :class:`SetNode` values) over ``universe``.
    """
    t = frozenset(getattr(t, "items", t))
    s = frozenset(getattr(t_next, "items", t_next))
    universe = frozenset(universe)
    if not (t <= universe and s <= universe and c in universe):
        raise ValueError("arguments must lie inside the universe")
    return (
        c not in t and t | {c} == s,
        t != s and t | {c} == s,
        t != s and t == s - {c},
        t <= s and frozenset({c}) == s - t,
    )
