"""Text, JSON and DOT serializations of graphs.

Text format: ``n=<INT>`` optionally followed by ``;e=<i>><j>,...`` (1-based,
``i>j`` is an edge from upper ``i`` to lower ``j``) and ``;d=<sym>,...``
(vertex decorations in index order).
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .graphs import DirectedGraph, GraphError, LeveledGraph

SYMBOL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
INT = re.compile(r"[0-9]+")


class ParseError(GraphError):
    """Malformed serialized input; ``pos`` is the 0-based offending offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def expect(self, lit: str):
        if not self.text.startswith(lit, self.pos):
            raise ParseError(f"expected {lit!r}", self.pos, self.text)
        self.pos += len(lit)

    def match(self, rx: re.Pattern, what: str) -> str:
        m = rx.match(self.text, self.pos)
        if not m:
            raise ParseError(f"expected {what}", self.pos, self.text)
        self.pos = m.end()
        return m.group()

    def at(self, lit: str) -> bool:
        return self.text.startswith(lit, self.pos)

    def done(self) -> bool:
        return self.pos == len(self.text)


def parse_decorated(text: str) -> tuple[DirectedGraph, tuple[str, ...] | None]:
    """Parse the text format into a graph and its optional decoration."""
    cur = _Cursor(text.strip())
    cur.expect("n=")
    n = int(cur.match(INT, "a vertex count"))
    edges: list[tuple[int, int]] = []
    deco = None
    if cur.at(";e="):
        cur.expect(";e=")
        while True:
            start = cur.pos
            u = int(cur.match(INT, "a source vertex"))
            cur.expect(">")
            v = int(cur.match(INT, "a target vertex"))
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge {u}>{v} outside 1..{n}", start, cur.text)
            if (u, v) in edges:
                raise ParseError(f"duplicate edge {u}>{v}", start, cur.text)
            edges.append((u, v))
            if not cur.at(","):
                break
            cur.expect(",")
    if cur.at(";d="):
        cur.expect(";d=")
        start = cur.pos
        syms = [cur.match(SYMBOL, "a decoration symbol")]
        while cur.at(","):
            cur.expect(",")
            syms.append(cur.match(SYMBOL, "a decoration symbol"))
        if len(syms) != n:
            raise ParseError(f"{len(syms)} decorations for {n} vertices", start, cur.text)
        deco = tuple(syms)
    if not cur.done():
        raise ParseError("unexpected trailing input", cur.pos, cur.text)
    return DirectedGraph(n, edges), deco


def parse(text: str) -> DirectedGraph:
    """Parse the text format; any decoration is available via ``parse_decorated``."""
    return parse_decorated(text)[0]


def format_graph(g, decoration: Sequence[str] | None = None) -> str:
    out = f"n={g.n}"
    if g.edges:
        out += ";e=" + ",".join(f"{u}>{v}" for u, v in g.edges)
    if decoration is not None:
        out += ";d=" + ",".join(decoration)
    return out


def graph_to_dict(g, decoration: Sequence[str] | None = None) -> dict:
    d = {"n": g.n, "edges": [[u, v] for u, v in g.edges]}
    if decoration is not None:
        d["decoration"] = list(decoration)
    return d


def graph_from_dict(d: dict) -> tuple[DirectedGraph, tuple[str, ...] | None]:
    try:
        g = DirectedGraph(int(d["n"]), [tuple(e) for e in d.get("edges", [])])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph object: {exc}", 0) from exc
    deco = d.get("decoration")
    return g, tuple(deco) if deco is not None else None


def to_json(g, decoration: Sequence[str] | None = None) -> str:
    return json.dumps(graph_to_dict(g, decoration), separators=(",", ":"))


def from_json(text: str) -> tuple[DirectedGraph, tuple[str, ...] | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos, text) from exc
    return graph_from_dict(data)


def default_levels(g: DirectedGraph) -> tuple[int, ...]:
    """Lowest leveling: sinks on level 1, others one above their lowest child."""
    level = [0] * g.n
    done = False
    while not done:
        done = True
        for u, v in g.edges:
            if level[u - 1] < level[v - 1] + 1:
                level[u - 1] = level[v - 1] + 1
                done = False
    return tuple(x + 1 for x in level)


def to_dot(g, levels: Sequence[int] | None = None, decoration: Sequence[str] | None = None, name: str = "G") -> str:
    """DOT export; vertices sharing a level are held on one rank, top level first."""
    if isinstance(g, LeveledGraph):
        levels = g.levels
        g = g.graph
    levels = tuple(levels) if levels is not None else default_levels(g)
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for v in range(1, g.n + 1):
        label = decoration[v - 1] if decoration is not None else str(v)
        lines.append(f'  v{v} [label="{label}"];')
    for lv in sorted(set(levels), reverse=True):
        members = " ".join(f"v{v}" for v in range(1, g.n + 1) if levels[v - 1] == lv)
        lines.append(f"  {{ rank=same; {members} }}")
    for u, v in g.edges:
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}", 0) from exc
