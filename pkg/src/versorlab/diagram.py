"""Coxeter diagrams and the small text language used to name them.

Grammar::

    diagram  := family | explicit
    family   := NAME ['^' INT]                      e.g.  H3   A1^3   E8
    explicit := 'rank' '=' INT [';' 'edges' ':' [edge {',' edge}]]
    edge     := INT '-' INT [':' INT]               label defaults to 3

Nodes are numbered from 1.  Pairs not listed get label 2 (orthogonal).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["CoxeterDiagram", "DiagramParseError", "parse_diagram", "FAMILIES"]


class DiagramParseError(ValueError):
    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


@dataclass(frozen=True)
class CoxeterDiagram:
    labels: tuple[tuple[int, ...], ...]
    name: str | None = None

    def __post_init__(self) -> None:
        n = len(self.labels)
        for i, row in enumerate(self.labels):
            if len(row) != n:
                raise DiagramParseError("label matrix is not square")
            if row[i] != 1:
                raise DiagramParseError(f"diagonal label m_{i + 1}{i + 1} must be 1")
            for j, m in enumerate(row):
                if m != self.labels[j][i]:
                    raise DiagramParseError(f"labels not symmetric at ({i + 1}, {j + 1})")
                if i != j and m < 2:
                    raise DiagramParseError(f"label m_{i + 1}{j + 1} = {m} is below 2")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def m(self, i: int, j: int) -> int:
        """Label between 1-based nodes i and j."""
        return self.labels[i - 1][j - 1]

    @classmethod
    def from_edges(cls, rank: int, edges: dict[tuple[int, int], int], name: str | None = None) -> CoxeterDiagram:
        rows = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), m in edges.items():
            rows[i - 1][j - 1] = rows[j - 1][i - 1] = m
        return cls(tuple(tuple(r) for r in rows), name)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i + 1, j + 1, self.labels[i][j])
                for i in range(self.rank) for j in range(i + 1, self.rank) if self.labels[i][j] != 2]

    def to_text(self) -> str:
        body = ", ".join(f"{i}-{j}:{m}" for i, j, m in self.edges())
        return f"rank={self.rank}; edges: {body}"


def _chain(n: int, last: int = 3) -> dict[tuple[int, int], int]:
    edges = {(i, i + 1): 3 for i in range(1, n)}
    if n > 1:
        edges[(n - 1, n)] = last
    return edges


FAMILIES: dict[str, CoxeterDiagram] = {
    "A1^3": CoxeterDiagram.from_edges(3, {}, "A1^3"),
    "A3": CoxeterDiagram.from_edges(3, _chain(3), "A3"),
    "B3": CoxeterDiagram.from_edges(3, _chain(3, 4), "B3"),
    # the 5 sits on (2, 3) for the standard H3 coordinates, where (a2|a3) = -tau/2
    "H3": CoxeterDiagram.from_edges(3, _chain(3, 5), "H3"),
    "E8": CoxeterDiagram.from_edges(8, {**_chain(7), (5, 8): 3}, "E8"),
}

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<sym>[-=;:,^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text[:pos]) + len(text[pos:]) - len(text[pos:].lstrip())
            raise DiagramParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise DiagramParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> CoxeterDiagram:
        kind, value, pos = self.peek()
        if kind == "name" and value.lower() == "rank":
            diagram = self.explicit()
        elif kind == "name":
            diagram = self.family()
        else:
            raise DiagramParseError("expected a family name or 'rank='", pos)
        self.take("end")
        return diagram

    def family(self) -> CoxeterDiagram:
        _, name, pos = self.take("name")
        if self.peek()[:2] == ("sym", "^"):
            self.take("sym", "^")
            name = f"{name}^{self.take('int')[1]}"
        key = name.upper()
        if key not in FAMILIES:
            raise DiagramParseError(f"unknown diagram {name!r}", pos)
        return FAMILIES[key]

    def explicit(self) -> CoxeterDiagram:
        self.take("name")
        self.take("sym", "=")
        _, r, rpos = self.take("int")
        rank = int(r)
        if not 1 <= rank <= 8:
            raise DiagramParseError(f"rank {rank} outside 1..8", rpos)
        edges: dict[tuple[int, int], int] = {}
        if self.peek()[:2] == ("sym", ";"):
            self.take("sym", ";")
            tok = self.take("name")
            if tok[1].lower() != "edges":
                raise DiagramParseError("expected 'edges'", tok[2])
            self.take("sym", ":")
            if self.peek()[0] == "int":
                self.edge(rank, edges)
                while self.peek()[:2] == ("sym", ","):
                    self.take("sym", ",")
                    self.edge(rank, edges)
        return CoxeterDiagram.from_edges(rank, edges)

    def edge(self, rank: int, edges: dict[tuple[int, int], int]) -> None:
        _, a, apos = self.take("int")
        self.take("sym", "-")
        _, b, bpos = self.take("int")
        label = 3
        if self.peek()[:2] == ("sym", ":"):
            self.take("sym", ":")
            _, m, mpos = self.take("int")
            label = int(m)
            if label < 2:
                raise DiagramParseError(f"edge label {label} is below 2", mpos)
        i, j = int(a), int(b)
        for node, p in ((i, apos), (j, bpos)):
            if not 1 <= node <= rank:
                raise DiagramParseError(f"node {node} outside 1..{rank}", p)
        if i == j:
            raise DiagramParseError("self-loop edge", apos)
        key = (min(i, j), max(i, j))
        if key in edges and edges[key] != label:
            raise DiagramParseError(f"conflicting labels for edge {key[0]}-{key[1]}", apos)
        edges[key] = label


def parse_diagram(text: str) -> CoxeterDiagram:
    """Parse a family name ("H3", "A1^3") or an explicit edge list."""
    return _Parser(text).parse()
