import pytest

from ncforms.errors import F1Violation, F2Violation, F3Violation
from ncforms.form import as_one_player_form, validate_form
from ncforms.morphism import forget_players
from ncforms.nodes import Atom, seq
from ncforms.oracle import enumerate_forms, enumerate_preforms

from conftest import note15_form, note17_form


def test_note17_players():
    f = note17_form()
    d = f.derived
    assert d.player_nodes == {"1": {seq()}, "2": {seq("a"), seq("b")}}
    assert d.player_info_sets == {"1": {frozenset({seq()})}, "2": {frozenset({seq("a"), seq("b")})}}
    assert f.owner("c") == "2"


def test_note15_players():
    d = note15_form().derived
    assert d.player_nodes["1"] == {seq(), seq("a")}
    assert d.player_info_sets["1"] == {frozenset({seq(), seq("a")})}


def test_vacuous_player_kept():
    f = note17_form()
    g = validate_form({"1", "2", "3"}, f.nodes, {**f.choice_assignment, "3": set()}, f.edges)
    assert g.derived.player_nodes["3"] == frozenset()
    assert g.derived.player_info_sets["3"] == frozenset()
    assert g.derived.player_nodes["2"] == f.derived.player_nodes["2"]
    assert g.players == {"1", "2", "3"}


def test_straddling_root_is_f3():
    n = [Atom(str(k)) for k in range(7)]
    edges = {(n[0], "a", n[1]), (n[0], "c", n[2])}
    edges |= {(n[1], "b", n[3]), (n[1], "d", n[4]), (n[2], "b", n[5]), (n[2], "d", n[6])}
    with pytest.raises(F3Violation) as info:
        validate_form({"1", "2"}, n, {"1": {"a", "b"}, "2": {"c", "d"}}, edges)
    assert info.value.witness[0] == n[0]


def test_shared_choice_is_f2():
    f = note17_form()
    with pytest.raises(F2Violation):
        validate_form({"1", "2"}, f.nodes, {"1": {"a", "b", "c"}, "2": {"c", "d"}}, f.edges)


def test_unowned_choice_is_f1():
    f = note17_form()
    with pytest.raises(F1Violation):
        validate_form({"1", "2"}, f.nodes, {"1": {"a", "b"}, "2": {"c"}}, f.edges)


def test_undeclared_player_is_f1():
    f = note17_form()
    with pytest.raises(F1Violation):
        validate_form({"1"}, f.nodes, {"1": {"a", "b"}, "2": {"c", "d"}}, f.edges)


def test_bad_preform_is_f1_with_cause():
    r, x = Atom("r"), Atom("x")
    with pytest.raises(F1Violation) as info:
        validate_form({"1"}, {r, x}, {"1": {"a", "b"}}, {(r, "a", x)})
    assert info.value.cause is not None and info.value.cause.axiom == "P3"


def test_one_player_view():
    f = note15_form()
    g = as_one_player_form(f.preform)
    assert g == f
    h = as_one_player_form(note17_form().preform)
    assert h.players == {"1"} and h != note17_form()


def test_partition_facts_on_universe():
    for f in enumerate_forms(5):
        d, pd = f.derived, f.preform.derived
        assert frozenset().union(*d.player_nodes.values()) == pd.decision_nodes
        assert frozenset().union(*d.player_info_sets.values()) == pd.info_sets
        players = sorted(f.players)
        for i in players:
            for j in players:
                if i < j:
                    assert not d.player_nodes[i] & d.player_nodes[j]
                    assert not d.player_info_sets[i] & d.player_info_sets[j]
            assert sum(map(len, d.player_info_sets[i])) == len(d.player_nodes[i])


def test_forget_after_one_player_view():
    for pf in enumerate_preforms(5):
        assert forget_players(as_one_player_form(pf)) == pf
