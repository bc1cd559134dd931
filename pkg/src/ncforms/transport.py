"""Rebuilding objects along bijections, and the two constructive style
converters (to choice-sequence nodes, and from there to choice-set nodes).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import (
    AbsentmindedInput,
    NoSuchPath,
    NotBijective,
    NotChoiceSequence,
    TheoremViolation,
    UnknownNode,
    ValidationFailure,
)
from .form import Form, validate_form
from .morphism import (
    IsoWitness,
    PreformMorphism,
    check_iso_witness,
    compose,
    invert,
    is_preform_isomorphism,
    validate_form_morphism,
    validate_preform_morphism,
)
from .nodes import SeqNode, SetNode, stage_key
from .preform import Preform, PreformDerived, validate_preform
from .styles import is_csq_preform, is_cset_preform
from .tree import Tree, validate_tree


@dataclass(frozen=True)
class TransportSpec:
    player_bij: Mapping
    node_bij: Mapping
    choice_bij: Mapping

    @classmethod
    def identity(cls, f: Form) -> TransportSpec:
        return cls({i: i for i in f.players}, {t: t for t in f.nodes}, {c: c for c in f.choices})


def _require_bijection(fn: Mapping, domain, what: str) -> dict:
    fn = dict(fn)
    domain = set(domain)
    if fn.keys() != domain:
        missing = sorted(domain - fn.keys(), key=str)
        extra = sorted(fn.keys() - domain, key=str)
        where = f"undefined at {missing[0]}" if missing else f"defined outside the domain at {extra[0]}"
        raise NotBijective(f"{what} is {where}")
    if len(set(fn.values())) != len(fn):
        seen = {}
        for x in sorted(fn, key=str):
            if fn[x] in seen:
                raise NotBijective(f"{what} sends both {seen[fn[x]]} and {x} to {fn[x]}")
            seen[fn[x]] = x
    return fn


def _validated(build, what):
    try:
        return build()
    except ValidationFailure as exc:
        raise TheoremViolation(f"transport along a bijection produced an invalid {what}: {exc}") from exc


def transport_tree(tree: Tree, node_bij: Mapping) -> Tree:
    tau = _require_bijection(node_bij, tree.nodes, "node bijection")
    return _validated(
        lambda: validate_tree(set(tau.values()), {tau[s]: tau[t] for s, t in tree.pred.items()}), "tree"
    )


def transport_preform(pf: Preform, node_bij: Mapping, choice_bij: Mapping) -> tuple[Preform, PreformMorphism]:
    tau = _require_bijection(node_bij, pf.nodes, "node bijection")
    delta = _require_bijection(choice_bij, pf.choices, "choice bijection")
    image = _validated(
        lambda: validate_preform(
            set(tau.values()), set(delta.values()), {(tau[t], delta[c], tau[s]) for t, c, s in pf.edges}
        ),
        "preform",
    )
    morphism = _validated(lambda: validate_preform_morphism(pf, image, tau, delta), "preform morphism")
    if not is_preform_isomorphism(morphism):
        raise TheoremViolation("transported preform morphism is not bijective")
    return image, morphism


def transport_form(f: Form, spec: TransportSpec) -> tuple[Form, IsoWitness]:
    iota = _require_bijection(spec.player_bij, f.players, "player bijection")
    tau = _require_bijection(spec.node_bij, f.nodes, "node bijection")
    delta = _require_bijection(spec.choice_bij, f.choices, "choice bijection")
    assignment = {iota[i]: frozenset(delta[c] for c in f.choice_assignment[i]) for i in f.players}
    image = _validated(
        lambda: validate_form(
            set(iota.values()),
            set(tau.values()),
            assignment,
            {(tau[t], delta[c], tau[s]) for t, c, s in f.edges},
        ),
        "form",
    )
    forward = _validated(lambda: validate_form_morphism(f, image, iota, tau, delta), "form morphism")
    return image, invert(forward)


# -- choice-sequence conversion --------------------------------------------

def sequence_node_of(pd: PreformDerived, t) -> SeqNode:
    """The sequence of choices leading from the root to ``t``."""
    if t not in pd.tree_derived.stage:
        raise UnknownNode(t)
    history = []
    while t != pd.root:
        history.append(pd.prev_choice[t])
        t = pd.pred[t]
    return SeqNode(tuple(reversed(history)))


def from_sequence_node(pf: Preform, s: SeqNode):
    """Fold the operator from the root along the choices of ``s``."""
    t = pf.root
    for k, c in enumerate(s.items):
        try:
            t = pf.apply(t, c)
        except KeyError:
            raise NoSuchPath(f"no edge for choice {c} at {t} (position {k + 1} of {s})") from None
    return t


def _history_map(pf: Preform) -> dict:
    pd = pf.derived
    tau = {t: sequence_node_of(pd, t) for t in pf.nodes}
    if len(set(tau.values())) != len(tau):
        raise TheoremViolation("choice histories are not distinct across nodes")
    return tau


def to_choice_sequence(f: Form) -> tuple[Form, IsoWitness]:
    """Relabel every node by its choice history; players and choices unchanged."""
    tau = _history_map(f.preform)
    image, witness = transport_form(f, TransportSpec({i: i for i in f.players}, tau, {c: c for c in f.choices}))
    if not is_csq_preform(image.preform):
        raise TheoremViolation("history relabeling is not a choice-sequence form")
    return image, witness


def preform_to_choice_sequence(pf: Preform) -> tuple[Preform, PreformMorphism]:
    image, morphism = transport_preform(pf, _history_map(pf), {c: c for c in pf.choices})
    if not is_csq_preform(image):
        raise TheoremViolation("history relabeling is not a choice-sequence preform")
    return image, morphism


def _range_map(pf: Preform) -> dict:
    verdict = is_csq_preform(pf)
    if not verdict:
        raise NotChoiceSequence(f"not a choice-sequence preform (witness {verdict.witness})")
    seen = {}
    tau = {}
    for t in sorted(pf.nodes, key=stage_key(pf.derived.tree_derived.stage)):
        r = SetNode(frozenset(t.items))
        if r in seen:
            raise AbsentmindedInput(seen[r], t)
        seen[r] = t
        tau[t] = r
    return tau


def to_choice_set(f: Form) -> tuple[Form, IsoWitness]:
    """Relabel every sequence node by its range.

    Requires a choice-sequence form without absentmindedness; otherwise
    :class:`AbsentmindedInput` carries the first colliding node pair.
    """
    tau = _range_map(f.preform)
    image, witness = transport_form(f, TransportSpec({i: i for i in f.players}, tau, {c: c for c in f.choices}))
    if not is_cset_preform(image.preform):
        raise TheoremViolation("range relabeling is not a choice-set form")
    return image, witness


def preform_to_choice_set(pf: Preform) -> tuple[Preform, PreformMorphism]:
    image, morphism = transport_preform(pf, _range_map(pf), {c: c for c in pf.choices})
    if not is_cset_preform(image):
        raise TheoremViolation("range relabeling is not a choice-set preform")
    return image, morphism


def compose_witnesses(second: IsoWitness, first: IsoWitness) -> IsoWitness:
    return IsoWitness(compose(second.forward, first.forward), compose(first.inverse, second.inverse))


def convert_any_to(style: str, f: Form) -> tuple[Form, IsoWitness]:
    """Convert an arbitrary form to ``"csq"`` or ``"cset"`` style."""
    if style not in ("csq", "cset"):
        raise ValueError(f"unknown style {style!r}")
    image, witness = to_choice_sequence(f)
    if style == "cset":
        image, second = to_choice_set(image)
        witness = compose_witnesses(second, witness)
        if not check_iso_witness(witness):
            raise TheoremViolation("composed conversion witness is not an isomorphism")
    return image, witness
