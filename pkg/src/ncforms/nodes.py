"""Node values: opaque atoms, choice sequences and choice sets.

Every node value renders to the text syntax used by the document format
(``@name``, ``[a,b]``, ``{a,b}``), and that rendering is also the
canonical sort key for nodes throughout the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

LABEL_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def check_label(token: str) -> str:
    if not isinstance(token, str) or not LABEL_RE.match(token):
        raise ValueError(f"invalid label {token!r}")
    return token


class _Node:
    __slots__ = ()

    def __lt__(self, other):
        return node_key(self) < node_key(other)


@dataclass(frozen=True, eq=True, order=False)
class Atom(_Node):
    name: str

    def __post_init__(self):
        check_label(self.name)

    def __str__(self):
        return "@" + self.name


@dataclass(frozen=True, eq=True, order=False)
class SeqNode(_Node):
    """A finite sequence of choice labels (possibly empty)."""

    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for c in self.items:
            check_label(c)

    def __len__(self):
        return len(self.items)

    def __str__(self):
        return "[" + ",".join(self.items) + "]"


@dataclass(frozen=True, eq=True, order=False)
class SetNode(_Node):
    """A finite set of choice labels (possibly empty)."""

    items: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "items", frozenset(self.items))
        for c in self.items:
            check_label(c)

    def __len__(self):
        return len(self.items)

    def __str__(self):
        return "{" + ",".join(sorted(self.items)) + "}"


NodeValue = Union[Atom, SeqNode, SetNode]


def seq(*items: str) -> SeqNode:
    return SeqNode(items)


def cset(*items: str) -> SetNode:
    return SetNode(frozenset(items))


def node_key(node) -> str:
    return str(node)


def stage_key(stage: dict):
    """Sort key ordering nodes by (stage, rendering)."""
    return lambda t: (stage[t], str(t))


def sorted_nodes(nodes: Iterable) -> list:
    return sorted(nodes, key=str)


def nodeset_key(nodes: Iterable) -> tuple:
    return tuple(sorted(str(t) for t in nodes))


def sorted_nodesets(collection: Iterable) -> list:
    return sorted(collection, key=nodeset_key)


def render_nodeset(nodes: Iterable) -> str:
    return "{" + ",".join(str(t) for t in sorted_nodes(nodes)) + "}"


def parse_node(token: str) -> NodeValue:
    """Parse a single node token; raises ``ValueError`` on bad syntax."""
    if token.startswith("@"):
        return Atom(token[1:])
    if token.startswith("[") and token.endswith("]"):
        body = token[1:-1]
        return SeqNode(tuple(body.split(",")) if body else ())
    if token.startswith("{") and token.endswith("}"):
        body = token[1:-1]
        items = body.split(",") if body else []
        if len(set(items)) != len(items):
            raise ValueError(f"duplicate element in set node {token!r}")
        return SetNode(frozenset(items))
    raise ValueError(f"invalid node {token!r}")
