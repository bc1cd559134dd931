import random

import pytest
from hypothesis import given, settings, strategies as st

from ncforms.canonical import form_key
from ncforms.errors import AbsentmindedInput, NoSuchPath, NotBijective, NotChoiceSequence, UnknownNode
from ncforms.form import validate_form
from ncforms.morphism import (
    check_iso_witness,
    identity_morphism,
    is_isomorphism,
    is_preform_isomorphism,
    isomorphism_consequences,
    preform_identity,
)
from ncforms.nodes import Atom, cset, seq
from ncforms.oracle import SubcategoryId, enumerate_forms, enumerate_preforms, universe
from ncforms.properties import PropertyId, check_invariance, has_no_absentmindedness
from ncforms.styles import is_csq_preform, is_cset_preform
from ncforms.transport import (
    TransportSpec,
    convert_any_to,
    from_sequence_node,
    preform_to_choice_sequence,
    sequence_node_of,
    to_choice_sequence,
    to_choice_set,
    transport_form,
    transport_preform,
    transport_tree,
)
from ncforms.tree import validate_tree

from conftest import note15_form, note17_form
from generators import random_rename

E, A, B = seq(), seq("a"), seq("b")


def test_transport_tree():
    tree = note15_form().preform.derived
    t = validate_tree(note15_form().nodes, dict(tree.pred))
    renamed = transport_tree(t, {n: Atom(f"n{k}") for k, n in enumerate(sorted(t.nodes, key=str))})
    assert len(renamed.nodes) == 5 and isinstance(renamed.root, Atom)
    assert sorted(len(renamed.children(x)) for x in renamed.nodes) == sorted(len(t.children(x)) for x in t.nodes)
    assert transport_tree(t, {n: n for n in t.nodes}) == t
    collapse = {n: n for n in t.nodes}
    collapse[seq("a", "b")] = seq("a", "a")
    with pytest.raises(NotBijective):
        transport_tree(t, collapse)


def test_transport_preform_examples():
    pf = note17_form().preform
    stage = pf.derived.tree_derived.stage
    tau = {t: Atom(str(k)) for k, t in enumerate(sorted(pf.nodes, key=lambda t: (stage[t], str(t))))}
    image, m = transport_preform(pf, tau, {c: c for c in pf.choices})
    assert is_preform_isomorphism(m) and image.root == Atom("0")
    same, ident = transport_preform(pf, {t: t for t in pf.nodes}, {c: c for c in pf.choices})
    assert same == pf and ident == preform_identity(pf)
    swapped, m2 = transport_preform(pf, {t: t for t in pf.nodes}, {"a": "b", "b": "a", "c": "c", "d": "d"})
    assert (E, "b", A) in swapped.edges and swapped != pf and is_preform_isomorphism(m2)
    with pytest.raises(NotBijective):
        transport_preform(pf, {t: t for t in pf.nodes}, {"a": "a", "b": "a", "c": "c", "d": "d"})


def test_transport_form_examples(note17):
    g, w = transport_form(note17, TransportSpec({"1": "2", "2": "1"}, {t: t for t in note17.nodes}, {c: c for c in "abcd"}))
    assert g.choice_assignment == {"1": {"c", "d"}, "2": {"a", "b"}}
    assert check_iso_witness(w)
    same, wid = transport_form(note17, TransportSpec.identity(note17))
    assert same == note17 and wid.forward == identity_morphism(note17)
    renamed, wr = random_rename(note17, random.Random(3))
    assert isomorphism_consequences(wr).all_passed
    with pytest.raises(NotBijective):
        transport_form(note17, TransportSpec({"1": "1"}, {t: t for t in note17.nodes}, {c: c for c in "abcd"}))


def test_sequence_node_of(note17, note17_atoms):
    g, w = note17_atoms
    tau = w.forward.node_map
    pd = g.preform.derived
    assert sequence_node_of(pd, tau[seq("a", "c")]) == seq("a", "c")
    assert sequence_node_of(pd, g.root) == seq()
    assert sequence_node_of(note15_form().preform.derived, seq("a", "b")) == seq("a", "b")
    with pytest.raises(UnknownNode):
        sequence_node_of(pd, Atom("nope"))


def test_from_sequence_node(note17, note17_atoms):
    g, w = note17_atoms
    assert from_sequence_node(g.preform, seq("b", "d")) == w.forward.node_map[seq("b", "d")]
    assert from_sequence_node(g.preform, seq()) == g.root
    with pytest.raises(NoSuchPath):
        from_sequence_node(note17.preform, seq("a", "a"))


def test_to_choice_sequence_examples(note17, note17_atoms):
    g, _w = note17_atoms
    image, w = to_choice_sequence(g)
    assert image == note17 and check_iso_witness(w)
    same, w2 = to_choice_sequence(note17)
    assert same == note17 and all(k == v for k, v in w2.forward.node_map.items())
    assert to_choice_sequence(note15_form())[0] == note15_form()


def test_to_choice_set_examples(note17):
    image, w = to_choice_set(note17)
    assert image.nodes == {cset(), cset("a"), cset("b"), cset("a", "c"), cset("a", "d"), cset("b", "c"), cset("b", "d")}
    assert image.choice_assignment == note17.choice_assignment
    assert isomorphism_consequences(w).all_passed
    with pytest.raises(AbsentmindedInput) as info:
        to_choice_set(note15_form())
    assert info.value.pair == (seq("a"), seq("a", "a"))
    two = validate_form({"1"}, {E, A}, {"1": {"a"}}, {(E, "a", A)})
    small, _ = to_choice_set(two)
    assert small.edges == {(cset(), "a", cset("a"))}
    with pytest.raises(NotChoiceSequence):
        to_choice_set(image)


def test_convert_any_to(note17, note17_atoms):
    g, _w = note17_atoms
    image, w = convert_any_to("cset", g)
    assert is_cset_preform(image.preform) and len(image.nodes) == 7
    assert isomorphism_consequences(w).all_passed and w.forward.source == g
    again, w2 = convert_any_to("cset", image)
    assert form_key(again) == form_key(image) and check_iso_witness(w2)
    with pytest.raises(AbsentmindedInput):
        convert_any_to("cset", note15_form())
    with pytest.raises(ValueError):
        convert_any_to("nodes", note17)


def test_history_round_trip_on_universe():
    for pf in enumerate_preforms(5):
        pd = pf.derived
        for t in pf.nodes:
            assert from_sequence_node(pf, sequence_node_of(pd, t)) == t
        image, _m = preform_to_choice_sequence(pf)
        for s in image.nodes:
            assert sequence_node_of(pd, from_sequence_node(pf, s)) == s


def test_converter_invariants_on_universe():
    for f in enumerate_forms(5):
        image, w = to_choice_sequence(f)
        assert is_csq_preform(image.preform) and is_isomorphism(w.forward)
        assert isomorphism_consequences(w).all_passed
        assert to_choice_sequence(image)[0] == image
        for prop in PropertyId:
            assert check_invariance(prop, w)
        absent = not has_no_absentmindedness(image.preform)
        if absent:
            with pytest.raises(AbsentmindedInput) as info:
                to_choice_set(image)
            x, y = info.value.pair
            assert x != y and set(x.items) == set(y.items)
        else:
            cs, w2 = to_choice_set(image)
            assert is_cset_preform(cs.preform) and isomorphism_consequences(w2).all_passed
            for prop in PropertyId:
                assert check_invariance(prop, w2)


def test_cset_idempotent_up_to_iso():
    for f in universe(SubcategoryId.CsetF, 5):
        image, _w = convert_any_to("cset", f)
        assert form_key(image) == form_key(f)
        assert image == f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rename_then_convert_recovers_sequence_form(seed):
    f = note17_form()
    g, _w = random_rename(f, random.Random(seed))
    image, _w2 = to_choice_sequence(g)
    assert form_key(image) == form_key(f)
