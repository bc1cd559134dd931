"""Information-set properties: no-absentmindedness and perfect-information."""

from __future__ import annotations

import enum

from .errors import NotChoiceSequence
from .form import Form
from .morphism import FormMorphism, IsoWitness
from .nodes import SeqNode, sorted_nodesets, stage_key
from .preform import Preform
from .styles import Verdict, is_csq_preform


class PropertyId(enum.Enum):
    NO_ABSENTMINDEDNESS = "no-absentmindedness"
    PERFECT_INFORMATION = "perfect-information"


def has_no_absentmindedness(pf: Preform) -> Verdict:
    """No information set holds two nodes one of which strictly precedes the other.

    The witness is ``(H, earlier, later)`` for the first offending pair, with
    information sets scanned in canonical order and nodes by (stage, name).
    """
    pd = pf.derived
    td = pd.tree_derived
    by_stage = stage_key(td.stage)
    for h in sorted_nodesets(pd.info_sets):
        members = sorted(h, key=by_stage)
        for a in members:
            for b in members:
                if (a, b) in td.strict_prec:
                    return Verdict(False, (h, a, b))
    return Verdict(True)


def has_perfect_information(pf: Preform) -> Verdict:
    for h in sorted_nodesets(pf.derived.info_sets):
        if len(h) != 1:
            return Verdict(False, h)
    return Verdict(True)


_CHECKS = {
    PropertyId.NO_ABSENTMINDEDNESS: has_no_absentmindedness,
    PropertyId.PERFECT_INFORMATION: has_perfect_information,
}


def preform_property(pf: Preform, prop: PropertyId) -> Verdict:
    return _CHECKS[PropertyId(prop)](pf)


def form_property(f: Form, prop: PropertyId) -> Verdict:
    return preform_property(f.preform, prop)


def absentmindedness_characterizations(pf: Preform) -> tuple:
    """Five conditions on a choice-sequence preform, all equivalent to
    no-absentmindedness:

    (a) no-absentmindedness itself;
    (b) no member of an information set is a proper initial segment of
        another member;
    (c) along any node, at most one coordinate is feasible at a given
        information set;
    (d) no node repeats a choice;
    (e) the range map is injective on nodes.
    """
    if not is_csq_preform(pf):
        raise NotChoiceSequence("absentmindedness characterizations need a choice-sequence preform")
    pd = pf.derived
    a = bool(has_no_absentmindedness(pf))
    b = all(
        SeqNode(t.items[:ell]) not in h
        for h in pd.info_sets
        for t in h
        for ell in range(len(t))
    )
    feasible_at_h = {h: frozenset(c for t in h for c in pd.feasible(t)) for h in pd.info_sets}
    c = all(
        sum(1 for x in t.items if x in feasible_at_h[h]) <= 1
        for t in pf.nodes
        for h in pd.info_sets
    )
    d = all(len(set(t.items)) == len(t.items) for t in pf.nodes)
    ranges = [frozenset(t.items) for t in pf.nodes]
    e = len(set(ranges)) == len(ranges)
    return a, b, c, d, e


def check_invariance(prop: PropertyId, w: IsoWitness) -> bool:
    """Whether source and target of an isomorphism agree on ``prop``."""
    m = w.forward
    return bool(form_property(m.source, prop)) == bool(form_property(m.target, prop))


def morphism_pullback_check(m: FormMorphism) -> bool:
    """A no-absentminded target forces a no-absentminded source."""
    return not (
        has_no_absentmindedness(m.target.preform) and not has_no_absentmindedness(m.source.preform)
    )
