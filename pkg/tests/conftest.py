from pathlib import Path

import pytest

from ncforms import formio
from ncforms.form import validate_form
from ncforms.nodes import Atom, seq
from ncforms.transport import TransportSpec, transport_form

DATA = Path(__file__).parent / "data"


def note15_form():
    e, a, b = seq(), seq("a"), seq("b")
    nodes = {e, a, b, seq("a", "a"), seq("a", "b")}
    edges = {(e, "a", a), (e, "b", b), (a, "a", seq("a", "a")), (a, "b", seq("a", "b"))}
    return validate_form({"1"}, nodes, {"1": {"a", "b"}}, edges)


def note17_form():
    e, a, b = seq(), seq("a"), seq("b")
    nodes = {e, a, b} | {seq(x, y) for x in "ab" for y in "cd"}
    edges = {(e, "a", a), (e, "b", b)} | {(seq(x), y, seq(x, y)) for x in "ab" for y in "cd"}
    return validate_form({"1", "2"}, nodes, {"1": {"a", "b"}, "2": {"c", "d"}}, edges)


def atom_rename(f):
    """Nodes renamed @0, @1, ... in (stage, rendering) order; players and choices kept."""
    stage = f.preform.derived.tree_derived.stage
    order = sorted(f.nodes, key=lambda t: (stage[t], str(t)))
    tau = {t: Atom(str(k)) for k, t in enumerate(order)}
    spec = TransportSpec({i: i for i in f.players}, tau, {c: c for c in f.choices})
    return transport_form(f, spec)


@pytest.fixture
def note15():
    return note15_form()


@pytest.fixture
def note17():
    return note17_form()


@pytest.fixture
def note17_atoms():
    return atom_rename(note17_form())


@pytest.fixture
def data_dir():
    return DATA


def load(name):
    return formio.load(DATA / name)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
