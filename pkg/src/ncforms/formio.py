"""The NCF/1 text format.

::

    ncf 1 form
    root: []
    player 1: a b
    player 2: c d
    edge: [] a [a]
    ...

Preform documents use ``ncf 1 preform`` and a single ``choices:`` line in
place of the player lines. ``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

from .errors import NCFSyntaxError, RootMismatch
from .form import Form, validate_form
from .morphism import FormMorphism, PreformMorphism
from .nodes import LABEL_RE, parse_node, sorted_nodes
from .preform import Preform, validate_preform

HEADER = "ncf 1"


def _edge_lines(edges) -> list[str]:
    ordered = sorted(edges, key=lambda e: (str(e[0]), e[1]))
    return [f"edge: {t} {c} {s}" for t, c, s in ordered]


def serialize(x: Form | Preform) -> str:
    if isinstance(x, Form):
        lines = [f"{HEADER} form", f"root: {x.root}"]
        for i in sorted(x.players):
            lines.append(" ".join([f"player {i}:", *sorted(x.choice_assignment[i])]).rstrip())
    elif isinstance(x, Preform):
        lines = [f"{HEADER} preform", f"root: {x.root}", " ".join(["choices:", *sorted(x.choices)])]
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    lines.extend(_edge_lines(x.edges))
    return "\n".join(lines) + "\n"


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _node(token: str, line: int, column: int):
    try:
        return parse_node(token)
    except ValueError as exc:
        raise NCFSyntaxError(str(exc), line, column) from None


def _label(token: str, line: int, column: int) -> str:
    if not LABEL_RE.fullmatch(token):
        raise NCFSyntaxError(f"invalid identifier {token!r}", line, column)
    return token


def _tokens(text: str):
    """Yield (line number, fields, 1-based column of each field) per content line."""
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = _strip(raw)
        if not body.strip():
            continue
        fields, cols = [], []
        pos = 0
        for tok in body.split():
            pos = body.index(tok, pos)
            fields.append(tok)
            cols.append(pos + 1)
            pos += len(tok)
        yield lineno, fields, cols


def parse(text: str) -> Form | Preform:
    """Parse and validate a document.

    Raises :class:`NCFSyntaxError` with line and column for malformed text,
    and the axiom's :class:`ValidationFailure` when the object is invalid.
    """
    lines = list(_tokens(text))
    if not lines:
        raise NCFSyntaxError("empty document", 1, 1)
    lineno, fields, cols = lines[0]
    if fields[:2] != ["ncf", "1"] or len(fields) != 3 or fields[2] not in ("form", "preform"):
        raise NCFSyntaxError("expected header 'ncf 1 form' or 'ncf 1 preform'", lineno, cols[0])
    kind = fields[2]
    root = None
    players: dict[str, list[str]] = {}
    choices = None
    edges = []
    for lineno, fields, cols in lines[1:]:
        head = fields[0]
        if head == "root:":
            if root is not None:
                raise NCFSyntaxError("duplicate root line", lineno, cols[0])
            if len(fields) != 2:
                raise NCFSyntaxError("root line takes exactly one node", lineno, cols[0])
            root = _node(fields[1], lineno, cols[1])
        elif head == "edge:":
            if len(fields) != 4:
                raise NCFSyntaxError("edge line takes a node, a choice and a node", lineno, cols[0])
            edges.append(
                (
                    _node(fields[1], lineno, cols[1]),
                    _label(fields[2], lineno, cols[2]),
                    _node(fields[3], lineno, cols[3]),
                )
            )
        elif head == "player" and kind == "form":
            if len(fields) < 2 or not fields[1].endswith(":"):
                raise NCFSyntaxError("expected 'player <id>: <choices>'", lineno, cols[0])
            pid = _label(fields[1][:-1], lineno, cols[1])
            if pid in players:
                raise NCFSyntaxError(f"player {pid} declared twice", lineno, cols[1])
            players[pid] = [_label(c, lineno, col) for c, col in zip(fields[2:], cols[2:])]
        elif head == "choices:" and kind == "preform":
            if choices is not None:
                raise NCFSyntaxError("duplicate choices line", lineno, cols[0])
            choices = [_label(c, lineno, col) for c, col in zip(fields[1:], cols[1:])]
        else:
            raise NCFSyntaxError(f"unexpected {head!r} in a {kind} document", lineno, cols[0])
    if root is None:
        raise NCFSyntaxError("missing root line", lines[-1][0], 1)
    nodes = {root} | {t for t, _c, _s in edges} | {s for _t, _c, s in edges}
    if kind == "form":
        obj = validate_form(set(players), nodes, players, edges)
    else:
        obj = validate_preform(nodes, set(choices or ()), edges)
    if obj.root != root:
        raise RootMismatch(f"declared root {root} but the edges give root {obj.root}", witness=(root, obj.root))
    return obj


def load(path) -> Form | Preform:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(x: Form | Preform, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(x))


def _mapping_lines(fn, keys) -> list[str]:
    return [f"{k} -> {fn[k]}" for k in keys]


def serialize_witness(m: FormMorphism | PreformMorphism) -> str:
    """Mapping tables of a morphism, one ``<from> -> <to>`` pair per line."""
    lines = []
    if isinstance(m, FormMorphism):
        lines.append("players:")
        lines.extend(_mapping_lines(m.player_map, sorted(m.player_map)))
    lines.append("nodes:")
    lines.extend(_mapping_lines(m.node_map, sorted_nodes(m.node_map)))
    lines.append("choices:")
    lines.extend(_mapping_lines(m.choice_map, sorted(m.choice_map)))
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> dict:
    """Read mapping tables back into ``{"players": {...}, "nodes": {...}, "choices": {...}}``."""
    tables: dict[str, dict] = {}
    current = None
    for lineno, fields, cols in _tokens(text):
        if len(fields) == 1 and fields[0] in ("players:", "nodes:", "choices:"):
            current = tables.setdefault(fields[0][:-1], {})
            continue
        if current is None or len(fields) != 3 or fields[1] != "->":
            raise NCFSyntaxError("expected '<from> -> <to>' inside a section", lineno, cols[0])
        if current is tables.get("nodes"):
            current[_node(fields[0], lineno, cols[0])] = _node(fields[2], lineno, cols[2])
        else:
            current[_label(fields[0], lineno, cols[0])] = _label(fields[2], lineno, cols[2])
    return tables
