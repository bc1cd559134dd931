"""Canonical labelling of preforms and forms up to isomorphism.

A preform is a rooted tree whose edges carry choice labels, so two preforms
are isomorphic exactly when their labelled trees agree after renaming nodes
and choices. The canonical key is the least encoding over all breadth-first
orderings of the tree; children are first sorted by unlabelled subtree
shape, and only children of equal shape are permuted.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable

from .form import Form, validate_form
from .nodes import Atom
from .preform import Preform, validate_preform


def choice_name(k: int) -> str:
    return chr(ord("a") + k) if k < 26 else f"c{k}"


def player_name(k: int) -> str:
    return str(k + 1)


def shape_codes(root, children: dict) -> dict:
    """Unlabelled subtree codes; equal codes mean isomorphic subtrees."""
    codes = {}

    def visit(t):
        codes[t] = tuple(sorted(visit(s) for _c, s in children.get(t, ())))
        return codes[t]

    visit(root)
    return codes


def _children_of(edges) -> dict:
    children = {}
    for t, c, s in edges:
        children.setdefault(t, []).append((c, s))
    return children


def _arrangements(kids, codes):
    """Child orderings: sorted by shape, permuted within equal-shape runs."""
    kids = sorted(kids, key=lambda cs: codes[cs[1]])
    runs = []
    for cs in kids:
        if runs and codes[runs[-1][0][1]] == codes[cs[1]]:
            runs[-1].append(cs)
        else:
            runs.append([cs])
    for parts in product(*(permutations(r) for r in runs)):
        yield [cs for part in parts for cs in part]


def _orderings(root, children, codes):
    """Yield every admissible breadth-first list of (parent, choice, node)."""

    def grow(queue, acc):
        if not queue:
            yield acc
            return
        t, rest = queue[0], queue[1:]
        kids = children.get(t, ())
        if not kids:
            yield from grow(rest, acc)
            return
        for arr in _arrangements(kids, codes):
            yield from grow(rest + [s for _c, s in arr], acc + [(t, c, s) for c, s in arr])

    yield from grow([root], [])


def labelled_tree_key(root, edges: Iterable, owner: dict | None = None, vacuous: int = 0) -> tuple:
    """Isomorphism-invariant key of a choice-labelled rooted tree.

    ``owner`` maps each choice to its player for forms; ``vacuous`` counts
    players without choices.
    """
    edges = list(edges)
    children = _children_of(edges)
    codes = shape_codes(root, children)
    best = None
    for order in _orderings(root, children, codes):
        index = {root: 0}
        names = {}
        body = []
        for t, c, s in order:
            index[s] = len(index)
            if c not in names:
                names[c] = len(names)
            body.append((index[t], names[c]))
        if owner is None:
            key = (len(index), tuple(body))
        else:
            pnames = {}
            for c in sorted(names, key=names.get):
                pnames.setdefault(owner[c], len(pnames))
            key = (len(index), tuple(body), tuple(pnames[owner[c]] for c in sorted(names, key=names.get)), vacuous)
        if best is None or key < best:
            best = key
    if best is None:
        return (1, ()) if owner is None else (1, (), (), vacuous)
    return best


def preform_key(pf: Preform) -> tuple:
    return labelled_tree_key(pf.root, pf.edges)


def form_key(f: Form) -> tuple:
    vacuous = sum(1 for i in f.players if not f.choice_assignment[i])
    return labelled_tree_key(f.root, f.edges, f.derived.owner, vacuous)


def preform_from_key(key: tuple) -> Preform:
    n, body = key[0], key[1]
    nodes = [Atom(str(k)) for k in range(n)]
    edges = {(nodes[p], choice_name(c), nodes[k + 1]) for k, (p, c) in enumerate(body)}
    return validate_preform(nodes, {choice_name(c) for _p, c in body}, edges)


def form_from_key(key: tuple) -> Form:
    n, body, players, vacuous = key
    nodes = [Atom(str(k)) for k in range(n)]
    edges = {(nodes[p], choice_name(c), nodes[k + 1]) for k, (p, c) in enumerate(body)}
    count = (max(players) + 1 if players else 0) + vacuous
    assignment = {player_name(i): set() for i in range(count)}
    for c, i in enumerate(players):
        assignment[player_name(i)].add(choice_name(c))
    return validate_form(set(assignment), nodes, assignment, edges)


def canonical_preform(pf: Preform) -> Preform:
    return preform_from_key(preform_key(pf))


def canonical_form(f: Form) -> Form:
    return form_from_key(form_key(f))


def certificate(x: Form | Preform) -> str:
    """Serialization of the canonical representative; equal iff isomorphic."""
    from .formio import serialize

    return serialize(canonical_form(x) if isinstance(x, Form) else canonical_preform(x))
