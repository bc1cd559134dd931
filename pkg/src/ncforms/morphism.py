"""Preform and form morphisms, the category operations on them, isomorphism
decision and inversion, consequence reports, and the player-forgetting functor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    DegenerateSubform,
    FMViolation,
    NotAnIsomorphism,
    PMViolation,
    SourceTargetMismatch,
    TheoremViolation,
    UnknownNode,
    ValidationFailure,
)
from .form import Form, validate_form
from .nodes import sorted_nodes, stage_key
from .preform import Preform


@dataclass(frozen=True, eq=False)
class PreformMorphism:
    source: Preform
    target: Preform
    node_map: Mapping
    choice_map: Mapping

    def _key(self):
        return self.source, self.target, frozenset(self.node_map.items()), frozenset(self.choice_map.items())

    def __eq__(self, other):
        return isinstance(other, PreformMorphism) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


@dataclass(frozen=True, eq=False)
class FormMorphism:
    source: Form
    target: Form
    player_map: Mapping
    node_map: Mapping
    choice_map: Mapping

    def _key(self):
        return (
            self.source,
            self.target,
            frozenset(self.player_map.items()),
            frozenset(self.node_map.items()),
            frozenset(self.choice_map.items()),
        )

    def __eq__(self, other):
        return isinstance(other, FormMorphism) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


@dataclass(frozen=True)
class IsoWitness:
    forward: FormMorphism
    inverse: FormMorphism


@dataclass(frozen=True)
class ConsequenceItem:
    item: str
    description: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class ConsequenceReport:
    items: tuple

    @property
    def all_passed(self) -> bool:
        return all(it.passed for it in self.items)

    @property
    def failures(self) -> list:
        return [it for it in self.items if not it.passed]

    def ids(self) -> list:
        return [it.item for it in self.items]

    def __getitem__(self, item_id):
        for it in self.items:
            if it.item == item_id:
                return it
        raise KeyError(item_id)


@dataclass(frozen=True)
class NoneExhaustive:
    """Certificate that an isomorphism search explored every candidate."""

    reason: str
    branches: int = 0
    signature: tuple = field(default=())

    def __bool__(self):
        return False


# -- validation -------------------------------------------------------------

def _check_total(fn: Mapping, domain, codomain, what: str, raise_):
    missing = sorted(set(domain) - fn.keys(), key=str)
    if missing:
        raise_(f"{what} is undefined at {missing[0]}", missing[0])
    extra = sorted(fn.keys() - set(domain), key=str)
    if extra:
        raise_(f"{what} is defined outside its domain at {extra[0]}", extra[0])
    for x in sorted(domain, key=str):
        if fn[x] not in codomain:
            raise_(f"{what}({x}) = {fn[x]} lies outside the target", (x, fn[x]))


def validate_preform_morphism(source: Preform, target: Preform, node_map: Mapping, choice_map: Mapping) -> PreformMorphism:
    def fail(cond):
        def raise_(msg, witness):
            raise PMViolation(cond, msg, witness)
        return raise_

    node_map, choice_map = dict(node_map), dict(choice_map)
    _check_total(node_map, source.nodes, target.nodes, "τ", fail("PM1"))
    _check_total(choice_map, source.choices, target.choices, "δ", fail("PM2"))
    for t, c, s in sorted(source.edges, key=lambda e: tuple(map(str, e))):
        image = (node_map[t], choice_map[c], node_map[s])
        if image not in target.edges:
            raise PMViolation("PM3", f"image triple ({', '.join(map(str, image))}) is not an edge of the target", image)
    return PreformMorphism(source, target, node_map, choice_map)


def validate_form_morphism(source: Form, target: Form, player_map: Mapping, node_map: Mapping, choice_map: Mapping) -> FormMorphism:
    """Check conditions (a)-(e) and return the morphism."""
    def fail(cond):
        def raise_(msg, witness):
            raise FMViolation(cond, msg, witness)
        return raise_

    player_map, node_map, choice_map = dict(player_map), dict(node_map), dict(choice_map)
    _check_total(player_map, source.players, target.players, "ι", fail("a"))
    _check_total(node_map, source.nodes, target.nodes, "τ", fail("b"))
    _check_total(choice_map, source.choices, target.choices, "δ", fail("c"))
    for i in sorted(source.players):
        j = player_map[i]
        for c in sorted(source.choice_assignment[i]):
            if choice_map[c] not in target.choice_assignment[j]:
                raise FMViolation("d", f"δ({c}) = {choice_map[c]} is not a choice of player ι({i}) = {j}", (i, c))
    for t, c, s in sorted(source.edges, key=lambda e: tuple(map(str, e))):
        image = (node_map[t], choice_map[c], node_map[s])
        if image not in target.edges:
            raise FMViolation("e", f"image triple ({', '.join(map(str, image))}) is not an edge of the target", image)
    return FormMorphism(source, target, player_map, node_map, choice_map)


# -- category operations ----------------------------------------------------

def identity_morphism(f: Form) -> FormMorphism:
    return FormMorphism(
        f, f, {i: i for i in f.players}, {t: t for t in f.nodes}, {c: c for c in f.choices}
    )


def preform_identity(pf: Preform) -> PreformMorphism:
    return PreformMorphism(pf, pf, {t: t for t in pf.nodes}, {c: c for c in pf.choices})


def _after(second: Mapping, first: Mapping) -> dict:
    return {x: second[y] for x, y in first.items()}


def compose(later: FormMorphism, earlier: FormMorphism) -> FormMorphism:
    """``later ∘ earlier``; the result is re-validated."""
    if earlier.target != later.source:
        raise SourceTargetMismatch("target of the earlier morphism differs from the source of the later one")
    try:
        return validate_form_morphism(
            earlier.source,
            later.target,
            _after(later.player_map, earlier.player_map),
            _after(later.node_map, earlier.node_map),
            _after(later.choice_map, earlier.choice_map),
        )
    except ValidationFailure as exc:
        raise TheoremViolation(f"composite of two morphisms is not a morphism: {exc}") from exc


def compose_preform(later: PreformMorphism, earlier: PreformMorphism) -> PreformMorphism:
    if earlier.target != later.source:
        raise SourceTargetMismatch("target of the earlier morphism differs from the source of the later one")
    try:
        return validate_preform_morphism(
            earlier.source,
            later.target,
            _after(later.node_map, earlier.node_map),
            _after(later.choice_map, earlier.choice_map),
        )
    except ValidationFailure as exc:
        raise TheoremViolation(f"composite of two preform morphisms is not a morphism: {exc}") from exc


def _is_bijection(fn: Mapping, domain, codomain) -> bool:
    image = {fn[x] for x in domain}
    return len(image) == len(domain) and image == set(codomain)


def is_isomorphism(m: FormMorphism) -> bool:
    return (
        _is_bijection(m.player_map, m.source.players, m.target.players)
        and _is_bijection(m.node_map, m.source.nodes, m.target.nodes)
        and _is_bijection(m.choice_map, m.source.choices, m.target.choices)
    )


def is_preform_isomorphism(m: PreformMorphism) -> bool:
    return _is_bijection(m.node_map, m.source.nodes, m.target.nodes) and _is_bijection(
        m.choice_map, m.source.choices, m.target.choices
    )


def _inverse_map(fn: Mapping) -> dict:
    return {y: x for x, y in fn.items()}


def invert(m: FormMorphism) -> IsoWitness:
    if not is_isomorphism(m):
        raise NotAnIsomorphism("ι, τ and δ are not all bijections")
    try:
        back = validate_form_morphism(
            m.target, m.source, _inverse_map(m.player_map), _inverse_map(m.node_map), _inverse_map(m.choice_map)
        )
    except ValidationFailure as exc:
        raise TheoremViolation(f"inverse of a bijective morphism is not a morphism: {exc}") from exc
    return IsoWitness(m, back)


def invert_preform(m: PreformMorphism) -> PreformMorphism:
    if not is_preform_isomorphism(m):
        raise NotAnIsomorphism("τ and δ are not both bijections")
    try:
        return validate_preform_morphism(m.target, m.source, _inverse_map(m.node_map), _inverse_map(m.choice_map))
    except ValidationFailure as exc:
        raise TheoremViolation(f"inverse of a bijective preform morphism is not a morphism: {exc}") from exc


def check_iso_witness(w: IsoWitness) -> bool:
    """Both halves valid, bijective, mutually inverse."""
    f, g = w.forward, w.inverse
    try:
        validate_form_morphism(f.source, f.target, f.player_map, f.node_map, f.choice_map)
        validate_form_morphism(g.source, g.target, g.player_map, g.node_map, g.choice_map)
    except ValidationFailure:
        return False
    if not (is_isomorphism(f) and is_isomorphism(g)):
        return False
    if f.target != g.source or g.target != f.source:
        return False
    return compose(g, f) == identity_morphism(f.source) and compose(f, g) == identity_morphism(f.target)


# -- forgetful functor ------------------------------------------------------

def forget_players(f: Form) -> Preform:
    return f.preform


def forget_morphism(m: FormMorphism) -> PreformMorphism:
    return PreformMorphism(forget_players(m.source), forget_players(m.target), dict(m.node_map), dict(m.choice_map))


# -- consequence reports ----------------------------------------------------

def _image(fn: Mapping, nodes) -> frozenset:
    return frozenset(fn[t] for t in nodes)


def _first_missing(pairs, target_set):
    for p in sorted(pairs, key=lambda x: tuple(map(str, x)) if isinstance(x, tuple) else str(x)):
        if p not in target_set:
            return p
    return None


def _inclusion_item(item, description, images, target_set):
    missing = _first_missing(images, target_set)
    return ConsequenceItem(item, description, missing is None, missing)


def morphism_consequences(m: FormMorphism) -> ConsequenceReport:
    """Evaluate the derived-entity consequences (f)-(r) of a valid morphism."""
    src, trg = m.source, m.target
    pd, pd2 = src.preform.derived, trg.preform.derived
    td, td2 = pd.tree_derived, pd2.tree_derived
    fd, fd2 = src.derived, trg.derived
    tau, delta, iota = m.node_map, m.choice_map, m.player_map
    items = []
    items.append(_inclusion_item(
        "f", "feasible pairs map into feasible pairs",
        {(tau[t], delta[c]) for t, c in pd.feasibility}, pd2.feasibility))
    root_img = tau[pd.root]
    items.append(ConsequenceItem(
        "g", "target root weakly precedes the image of the root",
        (pd2.root, root_img) in td2.weak_prec, None if (pd2.root, root_img) in td2.weak_prec else root_img))
    items.append(_inclusion_item(
        "h", "predecessor graph maps into predecessor graph",
        {(tau[s], tau[t]) for s, t in pd.pred.items()}, set(pd2.pred.items())))
    items.append(_inclusion_item(
        "i", "previous-choice graph maps into previous-choice graph",
        {(tau[s], delta[c]) for s, c in pd.prev_choice.items()}, set(pd2.prev_choice.items())))
    items.append(_inclusion_item(
        "j", "decision nodes map into decision nodes", _image(tau, pd.decision_nodes), pd2.decision_nodes))
    bad = next((i for i in sorted(src.players)
                if not _image(tau, fd.player_nodes[i]) <= fd2.player_nodes[iota[i]]), None)
    items.append(ConsequenceItem("k", "each player's decision nodes map into those of its image player", bad is None, bad))
    bad = next((h for h in sorted(pd.info_sets, key=lambda h: sorted(map(str, h)))
                if not any(_image(tau, h) <= h2 for h2 in pd2.info_sets)), None)
    items.append(ConsequenceItem("l", "every information set maps into some information set", bad is None, bad))
    bad = next(((i, h) for i in sorted(src.players) for h in fd.player_info_sets[i]
                if not any(_image(tau, h) <= h2 for h2 in fd2.player_info_sets[iota[i]])), None)
    items.append(ConsequenceItem(
        "m", "every information set of a player maps into one of its image player", bad is None, bad))
    offset = td2.stage[root_img]
    bad = next((t for t in sorted_nodes(src.nodes) if td2.stage[tau[t]] != td.stage[t] + offset), None)
    items.append(ConsequenceItem("n", "stages shift by the stage of the image of the root", bad is None, bad))
    items.append(_inclusion_item(
        "o", "strict precedence maps into strict precedence",
        {(tau[a], tau[b]) for a, b in td.strict_prec}, td2.strict_prec))
    items.append(_inclusion_item(
        "p", "weak precedence maps into weak precedence",
        {(tau[a], tau[b]) for a, b in td.weak_prec}, td2.weak_prec))
    chains2 = td2.chains_finite | td2.chains_infinite
    bad = next((z for z in td.chains_finite if not any(_image(tau, z) <= z2 for z2 in chains2)), None)
    items.append(ConsequenceItem("q", "every finite maximal chain maps into a maximal chain", bad is None, bad))
    bad = next((z for z in td.chains_infinite if not any(_image(tau, z) <= z2 for z2 in td2.chains_infinite)), None)
    items.append(ConsequenceItem("r", "every infinite maximal chain maps into an infinite maximal chain", bad is None, bad))
    return ConsequenceReport(tuple(items))


def _bijection_item(item, description, fn, domain, codomain):
    images = [fn(x) for x in domain]
    ok = len(set(images)) == len(images) and set(images) == set(codomain)
    witness = None
    if not ok:
        seen = set()
        for x, y in zip(domain, images):
            if y in seen or y not in codomain:
                witness = x
                break
            seen.add(y)
        else:
            witness = next(iter(set(codomain) - set(images)), None)
    return ConsequenceItem(item, description, ok, witness)


def isomorphism_consequences(w: IsoWitness) -> ConsequenceReport:
    """Evaluate the isomorphism consequences (a)-(r) plus preimage preservation."""
    m = w.forward
    src, trg = m.source, m.target
    pd, pd2 = src.preform.derived, trg.preform.derived
    td, td2 = pd.tree_derived, pd2.tree_derived
    fd, fd2 = src.derived, trg.derived
    tau, delta, iota = m.node_map, m.choice_map, m.player_map

    def set_image(h):
        return _image(tau, h)

    items = [
        _bijection_item("a", "ι is a bijection onto the target players", iota.__getitem__, sorted(src.players), trg.players),
        _bijection_item("b", "τ is a bijection onto the target nodes", tau.__getitem__, sorted_nodes(src.nodes), trg.nodes),
        _bijection_item("c", "δ is a bijection onto the target choices", delta.__getitem__, sorted(src.choices), trg.choices),
    ]
    bad = next((i for i in sorted(src.players)
                if not _bijection_item("", "", delta.__getitem__, sorted(src.choice_assignment[i]),
                                       trg.choice_assignment[iota[i]]).passed), None)
    items.append(ConsequenceItem("d", "δ restricted to each player's choices is a bijection onto its image player's", bad is None, bad))
    items.append(_bijection_item(
        "e", "(τ,δ,τ) is a bijection between operator graphs",
        lambda e: (tau[e[0]], delta[e[1]], tau[e[2]]), sorted(src.edges, key=lambda e: tuple(map(str, e))), trg.edges))
    items.append(_bijection_item(
        "f", "(τ,δ) is a bijection between feasibility graphs",
        lambda p: (tau[p[0]], delta[p[1]]), sorted(pd.feasibility, key=lambda p: tuple(map(str, p))), pd2.feasibility))
    items.append(ConsequenceItem("g", "τ maps root to root", tau[pd.root] == pd2.root, None if tau[pd.root] == pd2.root else tau[pd.root]))
    items.append(_bijection_item(
        "h", "(τ,τ) is a bijection between predecessor graphs",
        lambda p: (tau[p[0]], tau[p[1]]), sorted(pd.pred.items(), key=lambda p: tuple(map(str, p))), set(pd2.pred.items())))
    items.append(_bijection_item(
        "i", "(τ,δ) is a bijection between previous-choice graphs",
        lambda p: (tau[p[0]], delta[p[1]]), sorted(pd.prev_choice.items(), key=lambda p: tuple(map(str, p))),
        set(pd2.prev_choice.items())))
    items.append(_bijection_item("j", "τ restricted to X is a bijection onto X′", tau.__getitem__,
                                 sorted_nodes(pd.decision_nodes), pd2.decision_nodes))
    bad = next((i for i in sorted(src.players)
                if not _bijection_item("", "", tau.__getitem__, sorted_nodes(fd.player_nodes[i]),
                                       fd2.player_nodes[iota[i]]).passed), None)
    items.append(ConsequenceItem("k", "τ restricted to each X_i is a bijection onto X′ of the image player", bad is None, bad))
    items.append(_bijection_item("l", "τ is a bijection between information-set collections", set_image,
                                 sorted(pd.info_sets, key=lambda h: sorted(map(str, h))), pd2.info_sets))
    bad = next((i for i in sorted(src.players)
                if not _bijection_item("", "", set_image, sorted(fd.player_info_sets[i], key=lambda h: sorted(map(str, h))),
                                       fd2.player_info_sets[iota[i]]).passed), None)
    items.append(ConsequenceItem("m", "τ is a bijection between each H_i and H′ of the image player", bad is None, bad))
    bad = next((t for t in sorted_nodes(src.nodes) if td2.stage[tau[t]] != td.stage[t]), None)
    items.append(ConsequenceItem("n", "τ preserves stages", bad is None, bad))
    items.append(_bijection_item(
        "o", "(τ,τ) is a bijection between strict precedence graphs",
        lambda p: (tau[p[0]], tau[p[1]]), sorted(td.strict_prec, key=lambda p: tuple(map(str, p))), td2.strict_prec))
    items.append(_bijection_item(
        "p", "(τ,τ) is a bijection between weak precedence graphs",
        lambda p: (tau[p[0]], tau[p[1]]), sorted(td.weak_prec, key=lambda p: tuple(map(str, p))), td2.weak_prec))
    items.append(_bijection_item("q", "τ is a bijection between finite maximal chains", set_image,
                                 sorted(td.chains_finite, key=lambda z: sorted(map(str, z))), td2.chains_finite))
    items.append(_bijection_item("r", "τ is a bijection between infinite maximal chains", set_image,
                                 sorted(td.chains_infinite, key=lambda z: sorted(map(str, z))), td2.chains_infinite))
    bad = next((c for c in sorted(src.choices) if set_image(pd.preimage(c)) != pd2.preimage(delta[c])), None)
    items.append(ConsequenceItem("feasible-preimage", "τ(F⁻¹(c)) = F′⁻¹(δ(c)) for every choice c", bad is None, bad))
    return ConsequenceReport(tuple(items))


# -- subforms ---------------------------------------------------------------

def subform_at(f: Form, t) -> tuple[Form, FormMorphism]:
    """Restrict ``f`` to ``t`` and its descendants, with the inclusion morphism."""
    if t not in f.nodes:
        raise UnknownNode(t)
    pd = f.preform.derived
    if t not in pd.decision_nodes:
        raise DegenerateSubform(f"{t} is terminal; a one-node subform is not a form")
    keep = {t} | {b for a, b in pd.tree_derived.strict_prec if a == t}
    edges = {e for e in f.edges if e[0] in keep}
    used = {c for _s, c, _u in edges}
    assignment = {i: f.choice_assignment[i] & used for i in f.players}
    sub = validate_form(f.players, keep, assignment, edges)
    inclusion = validate_form_morphism(
        sub, f, {i: i for i in f.players}, {s: s for s in keep}, {c: c for c in used}
    )
    return sub, inclusion


# -- isomorphism search -----------------------------------------------------

def signature(f: Form) -> tuple:
    """Isomorphism invariant: sizes, stage profile and per-stage out-degrees."""
    pd = f.preform.derived
    stage = pd.tree_derived.stage
    outdeg = {}
    for s, u in pd.pred.items():
        outdeg[u] = outdeg.get(u, 0) + 1
    depth = max(stage.values())
    per_stage = tuple(
        tuple(sorted(outdeg.get(t, 0) for t in f.nodes if stage[t] == k)) for k in range(depth + 1)
    )
    vacuous = sum(1 for i in f.players if not f.choice_assignment[i])
    return (len(f.nodes), len(f.choices), len(f.players), vacuous, per_stage)


def find_isomorphism(f: Form, g: Form) -> IsoWitness | NoneExhaustive:
    """Search for an isomorphism from ``f`` to ``g``.

    Nodes of ``f`` are visited breadth-first in canonical order; each node may
    only map to an unused child of its parent's image, and the choice (and
    hence player) correspondence is forced along the way.  Returns the first
    witness in that order, or a falsy :class:`NoneExhaustive` certificate.
    """
    sig_f, sig_g = signature(f), signature(g)
    if sig_f != sig_g:
        return NoneExhaustive("signatures differ", 0, (sig_f, sig_g))
    pd, pd2 = f.preform.derived, g.preform.derived
    stage = pd.tree_derived.stage
    order = sorted(f.nodes, key=stage_key(stage))
    kids2 = {}
    for s, u in pd2.pred.items():
        kids2.setdefault(u, []).append(s)
    for u in kids2:
        kids2[u].sort(key=str)
    size, size2 = _subtree_sizes(pd), _subtree_sizes(pd2)
    outdeg = {t: len(pd.feasible(t)) for t in f.nodes}
    outdeg2 = {t: len(pd2.feasible(t)) for t in g.nodes}
    owner, owner2 = f.derived.owner, g.derived.owner
    tau = {pd.root: pd2.root}
    used = {pd2.root}
    delta, delta_inv = {}, {}
    iota, iota_inv = {}, {}
    branches = 0

    def assign_choice(c, c2, undo):
        if c in delta:
            return delta[c] == c2
        if c2 in delta_inv:
            return False
        i, i2 = owner[c], owner2[c2]
        if i in iota:
            if iota[i] != i2:
                return False
        elif i2 in iota_inv:
            return False
        else:
            iota[i], iota_inv[i2] = i2, i
            undo.append(("p", i, i2))
        delta[c], delta_inv[c2] = c2, c
        undo.append(("c", c, c2))
        return True

    def rollback(undo):
        for kind, a, b in reversed(undo):
            if kind == "c":
                del delta[a], delta_inv[b]
            else:
                del iota[a], iota_inv[b]

    def search(k):
        nonlocal branches
        if k == len(order):
            return True
        t = order[k]
        parent2 = tau[pd.pred[t]]
        for t2 in kids2.get(parent2, ()):
            if t2 in used or size[t] != size2[t2] or outdeg[t] != outdeg2[t2]:
                continue
            branches += 1
            undo = []
            if assign_choice(pd.prev_choice[t], pd2.prev_choice[t2], undo):
                tau[t] = t2
                used.add(t2)
                if search(k + 1):
                    return True
                used.discard(t2)
                del tau[t]
            rollback(undo)
        return False

    if not search(1):
        return NoneExhaustive("search exhausted", branches, sig_f)
    vac = sorted(i for i in f.players if not f.choice_assignment[i])
    vac2 = sorted(i for i in g.players if not g.choice_assignment[i])
    iota.update(zip(vac, vac2))
    try:
        forward = validate_form_morphism(f, g, iota, tau, delta)
    except ValidationFailure as exc:
        raise TheoremViolation(f"isomorphism search produced a non-morphism: {exc}") from exc
    return invert(forward)


def _subtree_sizes(pd) -> dict:
    stage = pd.tree_derived.stage
    size = {t: 1 for t in stage}
    for t in sorted(stage, key=lambda s: -stage[s]):
        if t in pd.pred:
            size[pd.pred[t]] += size[t]
    return size
