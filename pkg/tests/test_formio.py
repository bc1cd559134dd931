import random

import pytest
from hypothesis import given, settings, strategies as st

from ncforms import formio
from ncforms.errors import F1Violation, NCFSyntaxError, P3Violation, RootMismatch
from ncforms.oracle import enumerate_forms, enumerate_preforms, universe, SubcategoryId

from conftest import DATA, atom_rename, note15_form, note17_form
from generators import random_rename


def test_golden_note17():
    text = formio.serialize(note17_form())
    assert text == (DATA / "note17.golden").read_text()
    assert text.count("\n") == 10 and text.endswith("d [b,d]\n")


def test_parse_note17_document():
    assert formio.parse((DATA / "note17.ncf").read_text()) == note17_form()
    assert formio.load(DATA / "note15.ncf") == note15_form()
    assert formio.load(DATA / "note15_preform.ncf") == note15_form().preform


def test_comments_and_blank_lines_are_ignored():
    text = "# heading\n\nncf 1 form   # kind\nroot: []\n\nplayer 1: b a\nedge: [] b [b]\nedge: [] a [a]\n"
    f = formio.parse(text)
    assert formio.serialize(f) == "ncf 1 form\nroot: []\nplayer 1: a b\nedge: [] a [a]\nedge: [] b [b]\n"


def test_empty_input():
    for text in ("", "\n\n", "# only a comment\n"):
        with pytest.raises(NCFSyntaxError) as info:
            formio.parse(text)
        assert info.value.line == 1


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("ncf 2 form\n", 1, 1),
        ("ncf 1 form\nroot: [a\n", 2, 7),
        ("ncf 1 form\nroot: []\nplayer 1: a\nedge: [] a\n", 4, 1),
        ("ncf 1 form\nroot: []\nchoices: a\n", 3, 1),
        ("ncf 1 preform\nroot: []\nchoices: a-b\n", 3, 10),
        ("ncf 1 form\nroot: []\nplayer 1: a\nplayer 1: b\n", 4, 8),
        ("ncf 1 form\nplayer 1: a\nedge: [] a [a]\n", 3, 1),
    ],
    ids=["header", "node", "edge-arity", "wrong-section", "identifier", "duplicate-player", "no-root"],
)
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(NCFSyntaxError) as info:
        formio.parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_validation_errors_propagate():
    with pytest.raises(F1Violation):
        formio.parse("ncf 1 form\nroot: []\nplayer 1: a\nedge: [] a [a]\nedge: [] z [z]\n")
    with pytest.raises(P3Violation):
        formio.load(DATA / "p3_violation.ncf")
    with pytest.raises(RootMismatch):
        formio.parse("ncf 1 form\nroot: [a]\nplayer 1: a\nedge: [] a [a]\n")


def test_vacuous_player_line():
    text = "ncf 1 form\nroot: @r\nplayer 1: a\nplayer 2:\nedge: @r a @x\n"
    f = formio.parse(text)
    assert f.choice_assignment["2"] == frozenset()
    assert formio.serialize(f) == text


def test_round_trips_on_universe():
    texts = set()
    objects = enumerate_forms(5) + enumerate_preforms(5) + list(universe(SubcategoryId.CsetF, 5))
    objects += [note15_form(), note17_form(), note15_form().preform, atom_rename(note17_form())[0]]
    for x in objects:
        text = formio.serialize(x)
        back = formio.parse(text)
        assert back == x
        assert formio.serialize(back) == text
        texts.add(text)
    assert len(texts) == len(set(objects))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["note15", "note17"]))
def test_round_trip_random_renames(seed, which):
    f = note15_form() if which == "note15" else note17_form()
    g, _w = random_rename(f, random.Random(seed))
    assert formio.parse(formio.serialize(g)) == g


def test_witness_tables(note17_atoms):
    g, w = note17_atoms
    text = formio.serialize_witness(w.forward)
    tables = formio.parse_witness(text)
    assert tables["nodes"] == dict(w.forward.node_map)
    assert tables["players"] == dict(w.forward.player_map)
    assert tables["choices"] == dict(w.forward.choice_map)
    assert text.splitlines()[0] == "players:"
