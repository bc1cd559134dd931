"""Morphisms built from identities, random renames, subform inclusions and
style conversions, for the law-checking tests."""

import random

from ncforms.morphism import identity_morphism, subform_at
from ncforms.nodes import Atom
from ncforms.oracle import enumerate_forms
from ncforms.transport import TransportSpec, to_choice_sequence, transport_form

from conftest import note15_form, note17_form


def random_spec(f, rng: random.Random, tag: str = "x") -> TransportSpec:
    nodes = sorted(f.nodes, key=str)
    names = list(range(len(nodes)))
    rng.shuffle(names)
    choices = sorted(f.choices)
    cnames = list(range(len(choices)))
    rng.shuffle(cnames)
    players = sorted(f.players)
    pnames = list(range(len(players)))
    rng.shuffle(pnames)
    return TransportSpec(
        {i: f"{tag}p{k}" for i, k in zip(players, pnames)},
        {t: Atom(f"{tag}{k}") for t, k in zip(nodes, names)},
        {c: f"{tag}c{k}" for c, k in zip(choices, cnames)},
    )


def random_rename(f, rng, tag="x"):
    return transport_form(f, random_spec(f, rng, tag))


def sample_forms():
    return [note15_form(), note17_form()] + enumerate_forms(5)


def inclusion_into(f, rng):
    decision = sorted(f.preform.derived.decision_nodes - {f.root}, key=str)
    if not decision:
        return identity_morphism(f)
    return subform_at(f, rng.choice(decision))[1]


def morphism_chains(seed=0):
    """Composable triples (m1, m2, m3) with m1: A -> B, m2: B -> C, m3: C -> D."""
    rng = random.Random(seed)
    chains = []
    for f in sample_forms():
        inc = inclusion_into(f, rng)
        g, w = random_rename(f, rng)
        h, w2 = to_choice_sequence(g)
        chains.append((inc, w.forward, w2.forward))
        chains.append((identity_morphism(inc.source), inc, w.forward))
        chains.append((w.forward, w.inverse, identity_morphism(f)))
        sub = inc.source
        s2, ws = random_rename(sub, rng, "y")
        chains.append((ws.inverse, inc, w.forward))
    return chains


def all_morphisms(seed=0):
    seen = []
    for chain in morphism_chains(seed):
        seen.extend(chain)
    return seen
