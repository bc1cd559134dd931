"""Deliberately naive reference computations used to cross-check the
library. Nothing here shares code with the search or enumeration paths."""

from itertools import permutations, product

from ncforms.errors import ValidationFailure
from ncforms.form import validate_form
from ncforms.nodes import Atom
from ncforms.preform import validate_preform


def rooted_tree_counts(n_max):
    """Unlabelled rooted trees on n nodes via the Euler transform recurrence."""
    a = [0, 1]
    for n in range(1, n_max):
        total = 0
        for k in range(1, n + 1):
            s = sum(d * a[d] for d in range(1, k + 1) if k % d == 0)
            total += s * a[n - k + 1]
        a.append(total // n)
    return a


def parent_arrays(n):
    """Every tree on nodes 0..n-1 in which parents precede children."""
    return product(*(range(i) for i in range(1, n)))


def naive_preforms(n):
    """All valid preforms on n atom nodes with choice labels from a fixed alphabet."""
    nodes = [Atom(str(i)) for i in range(n)]
    alphabet = [chr(ord("a") + k) for k in range(n - 1)]
    out = []
    for parents in parent_arrays(n):
        for labels in product(alphabet, repeat=n - 1):
            edges = {(nodes[p], c, nodes[i + 1]) for i, (p, c) in enumerate(zip(parents, labels))}
            try:
                out.append(validate_preform(nodes, set(labels), edges))
            except ValidationFailure:
                pass
    return out


def naive_forms(n, max_players=None):
    out = []
    for pf in dedupe(naive_preforms(n), naive_preform_iso):
        choices = sorted(pf.choices)
        k_max = max_players or len(choices)
        for owners in product(range(k_max), repeat=len(choices)):
            used = sorted(set(owners))
            if used != list(range(len(used))):
                continue
            assignment = {str(i + 1): {c for c, o in zip(choices, owners) if o == i} for i in used}
            try:
                out.append(validate_form(set(assignment), pf.nodes, assignment, pf.edges))
            except ValidationFailure:
                pass
    return out


def _node_bijections(x, y):
    xs, ys = sorted(x.nodes, key=str), sorted(y.nodes, key=str)
    for perm in permutations(ys):
        yield dict(zip(xs, perm))


def _forced_choice_map(x, y, tau):
    delta = {}
    target = {(t, s): c for t, c, s in y.edges}
    for t, c, s in x.edges:
        img = target.get((tau[t], tau[s]))
        if img is None or delta.setdefault(c, img) != img:
            return None
    if len(set(delta.values())) != len(delta):
        return None
    return delta


def naive_preform_iso(x, y):
    if len(x.nodes) != len(y.nodes) or len(x.choices) != len(y.choices):
        return False
    for tau in _node_bijections(x, y):
        if _forced_choice_map(x, y, tau) is not None:
            return True
    return False


def naive_form_iso(x, y):
    if len(x.nodes) != len(y.nodes) or len(x.players) != len(y.players):
        return False
    for tau in _node_bijections(x, y):
        delta = _forced_choice_map(x, y, tau)
        if delta is None:
            continue
        iota = {}
        ok = True
        for i in x.players:
            for c in x.choice_assignment[i]:
                j = y.owner(delta[c])
                if iota.setdefault(i, j) != j:
                    ok = False
        if ok and len(set(iota.values())) == len(iota):
            return True
    return False


def dedupe(objects, iso):
    reps = []
    for x in objects:
        if not any(iso(x, r) for r in reps):
            reps.append(x)
    return reps
