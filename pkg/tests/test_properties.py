import random

import pytest
from hypothesis import given, settings, strategies as st

from ncforms.errors import NotChoiceSequence
from ncforms.morphism import identity_morphism, invert, subform_at
from ncforms.nodes import seq
from ncforms.oracle import SubcategoryId, enumerate_preforms, universe
from ncforms.preform import validate_preform
from ncforms.properties import (
    PropertyId,
    absentmindedness_characterizations,
    check_invariance,
    form_property,
    has_no_absentmindedness,
    has_perfect_information,
    morphism_pullback_check,
)
from ncforms.transport import convert_any_to, to_choice_sequence

from conftest import atom_rename, note15_form, note17_form
from generators import all_morphisms, random_rename

NOABS, PERF = PropertyId.NO_ABSENTMINDEDNESS, PropertyId.PERFECT_INFORMATION


def test_note15_properties():
    pf = note15_form().preform
    verdict = has_no_absentmindedness(pf)
    assert not verdict
    assert verdict.witness == (frozenset({seq(), seq("a")}), seq(), seq("a"))
    assert not has_perfect_information(pf)
    assert not form_property(note15_form(), NOABS)


def test_note17_properties():
    f = note17_form()
    assert has_no_absentmindedness(f.preform)
    verdict = has_perfect_information(f.preform)
    assert not verdict and verdict.witness == {seq("a"), seq("b")}
    assert not form_property(f, PERF) and form_property(f, NOABS)


def test_distinct_chain_is_perfect():
    pf = validate_preform({seq(), seq("a"), seq("a", "b")}, {"a", "b"}, {(seq(), "a", seq("a")), (seq("a"), "b", seq("a", "b"))})
    assert has_perfect_information(pf)


def test_perfect_implies_no_absentmindedness():
    for pf in enumerate_preforms(6):
        if has_perfect_information(pf):
            assert has_no_absentmindedness(pf)


def test_characterizations_examples():
    assert absentmindedness_characterizations(note15_form().preform) == (False,) * 5
    assert absentmindedness_characterizations(note17_form().preform) == (True,) * 5
    with pytest.raises(NotChoiceSequence):
        absentmindedness_characterizations(atom_rename(note17_form())[0].preform)


def test_characterizations_agree_exhaustively():
    seen = set()
    for pf in universe(SubcategoryId.CsqP, 6):
        row = absentmindedness_characterizations(pf)
        assert len(set(row)) == 1
        seen.add(row[0])
    assert seen == {True, False}


def test_invariance_examples():
    for f in (note15_form(), note17_form()):
        _g, w = atom_rename(f)
        assert check_invariance(NOABS, w) and check_invariance(PERF, w)
        for image in (to_choice_sequence(f)[1],):
            assert check_invariance(NOABS, image) and check_invariance(PERF, image)
    w = convert_any_to("cset", note17_form())[1]
    assert check_invariance(NOABS, w) and check_invariance(PERF, w)
    assert check_invariance(NOABS, invert(identity_morphism(note15_form())))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["note15", "note17"]))
def test_invariance_under_random_transport(seed, which):
    f = note15_form() if which == "note15" else note17_form()
    _g, w = random_rename(f, random.Random(seed))
    assert check_invariance(NOABS, w) and check_invariance(PERF, w)


def test_pullback_examples():
    _sub, inc = subform_at(note17_form(), seq("a"))
    assert morphism_pullback_check(inc)
    assert morphism_pullback_check(identity_morphism(note15_form()))
    for m in all_morphisms():
        assert morphism_pullback_check(m)
