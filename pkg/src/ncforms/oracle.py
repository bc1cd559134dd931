"""Exhaustive universes of small trees, preforms and forms (one object per
isomorphism class) and desk-scale checks of enclosure relations between
subcategories.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Iterator

from .canonical import (
    choice_name,
    form_key,
    labelled_tree_key,
    player_name,
    preform_from_key,
)
from .errors import AbsentmindedInput, BoundTooSmall, LevelMismatch, NCFError
from .form import Form, as_one_player_form, validate_form
from .morphism import (
    IsoWitness,
    check_iso_witness,
    find_isomorphism,
    forget_morphism,
    identity_morphism,
    isomorphism_consequences,
    preform_identity,
)
from .nodes import Atom, SeqNode, SetNode
from .preform import Preform, validate_preform
from .properties import PropertyId, has_no_absentmindedness, has_perfect_information
from .styles import is_csq_preform, is_cset_preform
from .tree import Tree, validate_tree


class SubcategoryId(enum.Enum):
    NCF = "NCF"
    NCF_noabs = "NCF_noabs"
    NCF_perfinfo = "NCF_perfinfo"
    CsqF = "CsqF"
    CsqF_noabs = "CsqF_noabs"
    CsqF_perfinfo = "CsqF_perfinfo"
    CsetF = "CsetF"
    CsetF_perfinfo = "CsetF_perfinfo"
    NCP = "NCP"
    NCP_noabs = "NCP_noabs"
    NCP_perfinfo = "NCP_perfinfo"
    CsqP = "CsqP"
    CsqP_noabs = "CsqP_noabs"
    CsqP_perfinfo = "CsqP_perfinfo"
    CsetP = "CsetP"
    CsetP_perfinfo = "CsetP_perfinfo"

    @property
    def level(self) -> str:
        return "form" if self.value.split("_")[0].endswith("F") else "preform"

    @property
    def style(self) -> str:
        return self.value.split("_")[0][:-1].lower()

    @property
    def preform_level(self) -> SubcategoryId:
        base, sep, suffix = self.value.partition("_")
        return SubcategoryId(base[:-1] + "P" + sep + suffix)

    @property
    def prop(self) -> PropertyId | None:
        suffix = self.value.partition("_")[2]
        return {
            "": None,
            "noabs": PropertyId.NO_ABSENTMINDEDNESS,
            "perfinfo": PropertyId.PERFECT_INFORMATION,
        }[suffix]

    def with_prop(self, prop: PropertyId | None) -> SubcategoryId:
        base = self.value.split("_")[0]
        suffix = {None: "", PropertyId.NO_ABSENTMINDEDNESS: "_noabs", PropertyId.PERFECT_INFORMATION: "_perfinfo"}
        return SubcategoryId(base + suffix[prop])

    def contains(self, x: Form | Preform) -> bool:
        """Style recognizer and property predicate together."""
        pf = x.preform if isinstance(x, Form) else x
        if (self.level == "form") != isinstance(x, Form):
            raise LevelMismatch(f"{self.value} holds {self.level}s")
        style_ok = {"nc": lambda p: True, "csq": is_csq_preform, "cset": is_cset_preform}[self.style]
        if not style_ok(pf):
            return False
        if self.prop is PropertyId.NO_ABSENTMINDEDNESS:
            return bool(has_no_absentmindedness(pf))
        if self.prop is PropertyId.PERFECT_INFORMATION:
            return bool(has_perfect_information(pf))
        return True


def _check_bound(n: int) -> None:
    if n < 2:
        raise BoundTooSmall(f"node bound {n} is below 2; a functioned tree has at least two nodes")


# -- trees ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _tree_shapes(n: int) -> tuple:
    """Unlabelled rooted-tree codes with exactly ``n`` nodes, sorted."""
    if n == 1:
        return ((),)
    shapes = set()
    # a tree on n nodes is a root above a multiset of subtrees of total size n-1
    def split(remaining, max_part, acc):
        if remaining == 0:
            shapes.add(tuple(sorted(acc)))
            return
        for part in range(min(remaining, max_part), 0, -1):
            for code in _tree_shapes(part):
                split(remaining - part, part, acc + [code])

    split(n - 1, n - 1, [])
    return tuple(sorted(shapes))


def _tree_from_shape(code) -> tuple[list, dict]:
    """Atom nodes numbered breadth-first; children taken in code order."""
    nodes = [Atom("0")]
    pred = {}
    queue = [(nodes[0], code)]
    while queue:
        t, c = queue.pop(0)
        for sub in c:
            s = Atom(str(len(nodes)))
            nodes.append(s)
            pred[s] = t
            queue.append((s, sub))
    return nodes, pred


def trees_of_size(n: int) -> list[Tree]:
    return [validate_tree(*_tree_from_shape(code)) for code in _tree_shapes(n)]


def enumerate_trees(n: int) -> list[Tree]:
    """All tree shapes with 2..n nodes, one per isomorphism class."""
    _check_bound(n)
    return [t for m in range(2, n + 1) for t in trees_of_size(m)]


# -- node-and-choice preforms -----------------------------------------------

def _block_partitions(items: list, compatible: Callable) -> Iterator[list]:
    """Set partitions of ``items`` whose blocks are pairwise ``compatible``."""
    def go(k, blocks):
        if k == len(items):
            yield [list(b) for b in blocks]
            return
        x = items[k]
        for b in blocks:
            if all(compatible(x, y) for y in b):
                b.append(x)
                yield from go(k + 1, blocks)
                b.pop()
        blocks.append([x])
        yield from go(k + 1, blocks)
        blocks.pop()

    yield from go(0, [])


def _labelings(tree: Tree, prop: PropertyId | None) -> Iterator[set]:
    children = {}
    for s, t in tree.pred.items():
        children.setdefault(t, []).append(s)
    for t in children:
        children[t].sort(key=lambda a: int(a.name))
    decision = sorted(children, key=lambda a: int(a.name))
    ancestors = {t: set() for t in tree.nodes}
    for t in tree.nodes:
        u = t
        while u in tree.pred:
            u = tree.pred[u]
            ancestors[t].add(u)

    def compatible(x, y):
        if prop is PropertyId.PERFECT_INFORMATION:
            return False
        if len(children[x]) != len(children[y]):
            return False
        if prop is PropertyId.NO_ABSENTMINDEDNESS:
            return x not in ancestors[y] and y not in ancestors[x]
        return True

    for blocks in _block_partitions(decision, compatible):
        per_block = []
        next_choice = 0
        for block in blocks:
            d = len(children[block[0]])
            names = [choice_name(next_choice + j) for j in range(d)]
            next_choice += d
            first = [(block[0], names[j], children[block[0]][j]) for j in range(d)]
            rest = [
                [[(t, perm[j], children[t][j]) for j in range(d)] for perm in permutations(names)]
                for t in block[1:]
            ]
            per_block.append([first + [e for part in combo for e in part] for combo in product(*rest)])
        for combo in product(*per_block):
            yield {e for part in combo for e in part}


@lru_cache(maxsize=None)
def _nc_preform_keys(n: int, prop: PropertyId | None) -> tuple:
    keys = set()
    for tree in trees_of_size(n):
        for edges in _labelings(tree, prop):
            keys.add(labelled_tree_key(tree.root, edges))
    return tuple(sorted(keys))


# -- native choice-sequence and choice-set preforms --------------------------

def _grow(root, extend) -> Callable[[int], tuple]:
    """Growth by one node at a time, shared by the sequence and set styles.

    Objects of size ``m`` come from objects of size ``m - 1`` by adding one
    node; intermediates are identified up to relabelled-tree isomorphism,
    which is sound because a node's contents are determined by the choices
    on its path.
    """

    @lru_cache(maxsize=None)
    def level(m: int) -> tuple:
        if m == 1:
            return (frozenset({root}),)
        seen = {}
        for nodes in level(m - 1):
            alphabet = sorted({c for t in nodes for c in t.items})
            fresh = choice_name(len(alphabet))
            for new in extend(nodes, alphabet + [fresh]):
                grown = nodes | {new}
                key = labelled_tree_key(root, _style_edges(grown))
                seen.setdefault(key, grown)
        return tuple(seen[k] for k in sorted(seen))

    return level


def _style_edges(nodes) -> set:
    edges = set()
    for s in nodes:
        if isinstance(s, SeqNode):
            if s.items:
                edges.add((SeqNode(s.items[:-1]), s.items[-1], s))
        else:
            for c in s.items:
                t = SetNode(s.items - {c})
                if t in nodes:
                    edges.add((t, c, s))
    return edges


def _extend_seq(nodes, alphabet):
    for t in sorted(nodes, key=str):
        for c in alphabet:
            s = SeqNode(t.items + (c,))
            if s not in nodes:
                yield s


def _extend_set(nodes, alphabet):
    for t in sorted(nodes, key=str):
        for c in alphabet:
            if c in t.items:
                continue
            s = SetNode(t.items | {c})
            if s in nodes:
                continue
            # s must gain exactly one parent, and no node may gain a second one
            if any(SetNode(s.items - {x}) in nodes for x in s.items if x != c):
                continue
            if any(len(u) == len(s) + 1 and s.items < u.items for u in nodes):
                continue
            yield s


_seq_levels = _grow(SeqNode(()), _extend_seq)
_set_levels = _grow(SetNode(frozenset()), _extend_set)


def _native_preforms(style: str, n: int) -> tuple:
    levels = _seq_levels if style == "csq" else _set_levels
    out = []
    for nodes in levels(n):
        edges = _style_edges(nodes)
        try:
            out.append(validate_preform(nodes, {c for _t, c, _s in edges}, edges))
        except NCFError:
            continue  # information sets overlap without coinciding
    return tuple(out)


@lru_cache(maxsize=None)
def preforms_of_size(sub: SubcategoryId, n: int) -> tuple:
    """One preform per isomorphism class in ``sub`` (preform level) with ``n`` nodes."""
    if sub.style == "nc":
        return tuple(preform_from_key(k) for k in _nc_preform_keys(n, sub.prop))
    base = tuple(p for p in _native_preforms(sub.style, n))
    return tuple(p for p in base if sub.contains(p))


# -- forms over a preform -----------------------------------------------------

@lru_cache(maxsize=None)
def forms_over(pf: Preform, max_players: int) -> tuple:
    """Forms on ``pf`` with 1..max_players non-vacuous players, up to isomorphism."""
    pd = pf.derived
    info_sets = sorted(pd.info_sets, key=lambda h: sorted(str(t) for t in h))
    choices_of = {h: sorted(c for c in pf.choices if pd.preimage(c) == h) for h in info_sets}
    seen = {}
    for blocks in _block_partitions(info_sets, lambda x, y: True):
        if len(blocks) > max_players:
            continue
        assignment = {player_name(k): {c for h in b for c in choices_of[h]} for k, b in enumerate(blocks)}
        f = validate_form(set(assignment), pf.nodes, assignment, pf.edges)
        seen.setdefault(form_key(f), f)
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def universe_of_size(sub: SubcategoryId, n: int, max_players: int | None = None) -> tuple:
    """Objects of ``sub`` with exactly ``n`` nodes, one per isomorphism class."""
    if sub.level == "preform":
        return preforms_of_size(sub, n)
    pre = sub.preform_level
    bound = n - 1 if max_players is None else max_players
    return tuple(f for pf in preforms_of_size(pre, n) for f in forms_over(pf, bound))


def universe(sub: SubcategoryId, n: int, max_players: int | None = None) -> list:
    _check_bound(n)
    return [x for m in range(2, n + 1) for x in universe_of_size(sub, m, max_players)]


def enumerate_preforms(n: int) -> list[Preform]:
    """Every preform with 2..n nodes up to isomorphism, with atom nodes."""
    return universe(SubcategoryId.NCP, n)


def enumerate_forms(n: int, max_players: int | None = None) -> list[Form]:
    """Every form with 2..n nodes up to isomorphism, without vacuous players."""
    if max_players is not None and max_players < 1:
        raise BoundTooSmall("max_players must be at least 1")
    _check_bound(n)
    return universe(SubcategoryId.NCF, n, max_players)


# -- enclosure ------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Enough to replay an exhaustive refutation: the subject, the target
    universe searched and how much of it had a matching signature."""

    subject: str
    target: SubcategoryId
    node_count: int
    signature: tuple
    universe_size: int
    candidates: int
    branches: int


@dataclass(frozen=True)
class EnclosureResult:
    source: SubcategoryId
    target: SubcategoryId
    node_bound: int
    verified: bool
    witnesses: tuple = field(default=(), repr=False)
    counterexample: Form | Preform | None = None
    certificate: Certificate | None = None
    checked: int = 0

    def __bool__(self):
        return self.verified


@dataclass(frozen=True)
class StrictnessResult:
    weak: SubcategoryId
    strong: SubcategoryId
    node_bound: int
    inclusion: EnclosureResult = field(repr=False)
    refutation: EnclosureResult = field(repr=False)
    witness: Form | Preform | None = None

    @property
    def strict(self) -> bool:
        return self.inclusion.verified and not self.refutation.verified

    def __bool__(self):
        return self.strict


def _as_form(x):
    return x if isinstance(x, Form) else as_one_player_form(x)


def _preform_signature(x) -> tuple:
    from .morphism import signature

    sig = signature(_as_form(x))
    return sig if isinstance(x, Form) else (sig[0], sig[1], sig[4])


def _search(x, target: SubcategoryId, max_players):
    """Find an isomorph of ``x`` in ``target``; returns (witness, certificate)."""
    from .canonical import certificate as cert_of

    n = len(x.nodes)
    sig = _preform_signature(x)
    pool = universe_of_size(target, n, max_players)
    candidates = [y for y in pool if _preform_signature(y) == sig]
    branches = 0
    for y in candidates:
        found = find_isomorphism(_as_form(x), _as_form(y))
        if found:
            return (found if isinstance(x, Form) else _preform_witness(found, x, y)), None
        branches += found.branches
    return None, Certificate(cert_of(x), target, n, sig, len(pool), len(candidates), branches)


def _preform_witness(w: IsoWitness, x: Preform, y: Preform):
    return (forget_morphism(w.forward), forget_morphism(w.inverse))


def _identity_witness(x):
    if isinstance(x, Form):
        m = identity_morphism(x)
        return IsoWitness(m, m)
    m = preform_identity(x)
    return (m, m)


def _witness_ok(w) -> bool:
    if isinstance(w, IsoWitness):
        return check_iso_witness(w) and isomorphism_consequences(w).all_passed
    from .morphism import compose_preform, is_preform_isomorphism

    fwd, inv = w
    return (
        is_preform_isomorphism(fwd)
        and compose_preform(inv, fwd) == preform_identity(fwd.source)
        and compose_preform(fwd, inv) == preform_identity(fwd.target)
    )


def default_converter(source: SubcategoryId, target: SubcategoryId):
    """The constructive converter into ``target``'s style, if it has one."""
    from . import transport

    if target.style == "nc":
        return None
    if source.level == "form":
        if target.style == "csq":
            return transport.to_choice_sequence
        return lambda f: transport.convert_any_to("cset", f)

    def to_csq(pf):
        image, m = transport.preform_to_choice_sequence(pf)
        return image, (m, _inverse_preform(m))

    def to_cset(pf):
        image, m1 = transport.preform_to_choice_sequence(pf)
        image, m2 = transport.preform_to_choice_set(image)
        from .morphism import compose_preform

        m = compose_preform(m2, m1)
        return image, (m, _inverse_preform(m))

    return to_csq if target.style == "csq" else to_cset


def _inverse_preform(m):
    from .morphism import invert_preform

    return invert_preform(m)


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("NCF_JOBS", "1"))
    return max(1, jobs)


def _check_one(args):
    x, source, target, converter, max_players = args
    if converter is True:
        converter = default_converter(source, target)
    if target.contains(x):
        return "ok", _identity_witness(x), None
    if converter is not None:
        try:
            image, w = converter(x)
        except AbsentmindedInput:
            pass
        else:
            if target.contains(image) and _witness_ok(w):
                return "ok", w, None
    w, cert = _search(x, target, max_players)
    if w is not None:
        return "ok", w, None
    return "refuted", None, cert


def _same_level(a: SubcategoryId, b: SubcategoryId) -> None:
    if a.level != b.level:
        raise LevelMismatch(f"{a.value} holds {a.level}s but {b.value} holds {b.level}s")


def verify_enclosure(
    source: SubcategoryId,
    target: SubcategoryId,
    n: int,
    constructive: Callable | bool | None = None,
    max_players: int | None = None,
    objects=None,
    jobs: int | None = 1,
) -> EnclosureResult:
    """Check that every ``source`` object with at most ``n`` nodes is
    isomorphic to some ``target`` object.

    ``constructive`` may be a converter, or ``True`` to use the default one
    for the target style. Objects the converter cannot handle, and every
    object when there is no converter, are matched by searching the target
    universe among objects of equal signature. ``objects`` overrides the
    source universe. Results do not depend on ``jobs``.
    """
    source, target = SubcategoryId(source), SubcategoryId(target)
    _same_level(source, target)
    _check_bound(n)
    converter = constructive or None
    pool = list(objects) if objects is not None else universe(source, n, max_players)
    witnesses = []
    checked = 0
    tasks = [(x, source, target, converter, max_players) for x in pool]
    jobs = _resolve_jobs(jobs)
    if jobs > 1 and len(tasks) > 1 and converter in (None, True):
        results = _parallel(tasks, jobs, target, n, max_players)
    else:
        results = map(_check_one, tasks)
    for x, (status, w, cert) in zip(pool, results):
        checked += 1
        if status == "refuted":
            return EnclosureResult(source, target, n, False, tuple(witnesses), x, cert, checked)
        witnesses.append((x, w))
    return EnclosureResult(source, target, n, True, tuple(witnesses), None, None, checked)


def _parallel(tasks, jobs, target, n, max_players):
    import multiprocessing

    for m in range(2, n + 1):
        universe_of_size(target, m, max_players)  # warm caches before forking
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        return pool.map(_check_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))


def verify_equivalence(a: SubcategoryId, b: SubcategoryId, n: int, **kwargs) -> tuple[EnclosureResult, EnclosureResult]:
    """Enclosure in both directions; converters are used where a style has one."""
    a, b = SubcategoryId(a), SubcategoryId(b)
    _same_level(a, b)
    forward = verify_enclosure(a, b, n, constructive=kwargs.pop("constructive", True), **kwargs)
    backward = verify_enclosure(b, a, n, constructive=True, **kwargs)
    return forward, backward


def verify_strictness(
    weak: SubcategoryId,
    strong: SubcategoryId,
    n: int,
    candidates=None,
    max_players: int | None = None,
    jobs: int | None = 1,
) -> StrictnessResult:
    """Show ``strong`` sits inside ``weak`` but ``weak`` does not enclose
    ``strong``.

    The refutation scans ``candidates`` first (if given), then the ``weak``
    universe by increasing size, and stops at the first object with no
    ``strong`` isomorph.
    """
    weak, strong = SubcategoryId(weak), SubcategoryId(strong)
    _same_level(weak, strong)
    _check_bound(n)
    inclusion = verify_enclosure(strong, weak, n, max_players=max_players, jobs=jobs)

    def scan():
        for x in candidates or ():
            if len(x.nodes) <= n and weak.contains(x):
                yield x
        for m in range(2, n + 1):
            yield from universe_of_size(weak, m, max_players)

    checked = 0
    witnesses = []
    for x in scan():
        checked += 1
        status, w, cert = _check_one((x, weak, strong, None, max_players))
        if status == "refuted":
            refutation = EnclosureResult(weak, strong, n, False, tuple(witnesses), x, cert, checked)
            return StrictnessResult(weak, strong, n, inclusion, refutation, x)
        witnesses.append((x, w))
    refutation = EnclosureResult(weak, strong, n, True, tuple(witnesses), None, None, checked)
    return StrictnessResult(weak, strong, n, inclusion, refutation)
