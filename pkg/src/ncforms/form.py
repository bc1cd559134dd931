"""Node-and-choice forms ``(I, T, (C_i), ⊗)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import F1Violation, F2Violation, F3Violation, TheoremViolation, ValidationFailure
from .nodes import check_label, render_nodeset, sorted_nodes
from .preform import Preform, PreformDerived, validate_preform


@dataclass(frozen=True)
class FormDerived:
    preform_derived: PreformDerived
    player_nodes: Mapping
    player_info_sets: Mapping
    owner: Mapping = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class Form:
    """A validated form. Build instances with :func:`validate_form`."""

    players: frozenset
    nodes: frozenset
    choice_assignment: Mapping
    edges: frozenset
    preform: Preform = field(repr=False)
    derived: FormDerived = field(repr=False)

    def _key(self):
        return self.players, self.nodes, frozenset(self.choice_assignment.items()), self.edges

    def __eq__(self, other):
        return isinstance(other, Form) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def choices(self) -> frozenset:
        return self.preform.choices

    @property
    def root(self):
        return self.preform.root

    def owner(self, c):
        return self.derived.owner[c]


def validate_form(players, nodes, choice_assignment: Mapping, edges) -> Form:
    """Check [F1]-[F3] and return the validated form with its derived bundle."""
    players = frozenset(check_label(i) for i in players)
    assignment = {i: frozenset(cs) for i, cs in choice_assignment.items()}
    extra = sorted(set(assignment) - players)
    if extra:
        raise F1Violation(f"choices assigned to undeclared player {extra[0]}", witness=extra[0])
    for i in players:
        assignment.setdefault(i, frozenset())
    owner = {}
    for i in sorted(players):
        for c in sorted(assignment[i]):
            if c in owner:
                raise F2Violation(f"choice {c} is assigned to both player {owner[c]} and player {i}", witness=(c, owner[c], i))
            owner[c] = i
    all_choices = frozenset(owner)
    edges = frozenset(tuple(e) for e in edges)
    for t, c, s in sorted(edges, key=lambda e: tuple(map(str, e))):
        if c not in all_choices:
            raise F1Violation(f"edge ({t}, {c}, {s}) uses choice {c}, which no player owns", witness=(t, c, s))
    try:
        pf = validate_preform(nodes, all_choices, edges)
    except ValidationFailure as exc:
        raise F1Violation(f"underlying preform is invalid ({exc})", witness=exc.witness, cause=exc)
    pd = pf.derived
    for t in sorted_nodes(pf.nodes):
        movers = sorted({owner[c] for c in pd.feasible(t)})
        if len(movers) > 1:
            raise F3Violation(
                f"F({t}) contains choices of players {', '.join(movers)}", witness=(t, tuple(movers))
            )
    form = Form(players, pf.nodes, assignment, pf.edges, preform=pf, derived=None)
    object.__setattr__(form, "derived", derive_form(form, owner))
    return form


def derive_form(f: Form, owner: Mapping | None = None) -> FormDerived:
    """Per-player decision nodes and information sets.

    The partition facts relating them to the preform's entities are
    asserted on every call; a failure would be a bug, not bad input.
    """
    if owner is None:
        return f.derived
    pd = f.preform.derived
    player_nodes, player_info_sets = {}, {}
    for i in f.players:
        cs = f.choice_assignment[i]
        player_info_sets[i] = frozenset(pd.preimage(c) for c in cs)
        player_nodes[i] = frozenset(t for c in cs for t in pd.preimage(c))
    derived = FormDerived(pd, player_nodes, player_info_sets, dict(owner))
    _check_player_partitions(f.players, pd, derived)
    return derived


def _check_player_partitions(players, pd: PreformDerived, fd: FormDerived) -> None:
    ordered = sorted(players)
    union_x = frozenset().union(*fd.player_nodes.values()) if ordered else frozenset()
    union_h = frozenset().union(*fd.player_info_sets.values()) if ordered else frozenset()
    if union_x != pd.decision_nodes:
        raise TheoremViolation("player decision nodes do not cover X")
    if union_h != pd.info_sets:
        raise TheoremViolation("player information sets do not cover H")
    for a in ordered:
        for b in ordered:
            if a < b and (fd.player_nodes[a] & fd.player_nodes[b] or fd.player_info_sets[a] & fd.player_info_sets[b]):
                raise TheoremViolation(f"players {a} and {b} share decision nodes or information sets")
        blocks = fd.player_info_sets[a]
        if frozenset().union(*blocks) != fd.player_nodes[a] or sum(map(len, blocks)) != len(fd.player_nodes[a]):
            raise TheoremViolation(
                f"H_{a} does not partition X_{a} = {render_nodeset(fd.player_nodes[a])}"
            )


def as_one_player_form(pf: Preform, player: str = "1") -> Form:
    """View a preform as a form whose single player owns every choice."""
    return validate_form({player}, pf.nodes, {player: pf.choices}, pf.edges)
