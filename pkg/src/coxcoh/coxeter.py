"""Coxeter graphs, independence complexes, and parabolic deletions.

Generators are indexed 0..n-1; reports print them 1-based as s1..sn.
An edge label m_ij >= 3 means s_i and s_j do not commute; absent pairs
carry the implicit label 2 (commuting).  INFINITY marks m_ij = oo.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import lcm
from typing import Optional

__all__ = [
    "INFINITY",
    "CoxeterGraph",
    "IndependentSet",
    "ParabolicDeletion",
    "parse_graph",
    "independent_sets",
    "max_independent_size",
    "parabolic_deletions",
    "induced_subgraph",
]

INFINITY = float("inf")

# A strictly increasing tuple of generator indices, pairwise commuting.
IndependentSet = tuple


@dataclass(frozen=True)
class CoxeterGraph:
    """Vertex set {0..n-1} with symmetric labels; only labels >= 3 stored."""

    n: int
    labels: tuple = ()  # sorted tuple of ((i, j), m) with i < j, m >= 3
    name: str = ""

    def __post_init__(self):
        seen = set()
        for (i, j), m in self.labels:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge ({i},{j}) for n={self.n}")
            if m != INFINITY and (not isinstance(m, int) or m < 3):
                raise ValueError(f"edge label must be >= 3 or oo, got {m}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))

    @classmethod
    def from_edges(cls, n: int, edges, name: str = "") -> "CoxeterGraph":
        labels = tuple(((min(i, j), max(i, j)), m) for (i, j, m) in edges)
        return cls(n, labels, name)

    def label(self, i: int, j: int):
        """m_ij; 1 on the diagonal, 2 for non-adjacent pairs."""
        if i == j:
            return 1
        key = (min(i, j), max(i, j))
        for (e, m) in self.labels:
            if e == key:
                return m
        return 2

    def commutes(self, i: int, j: int) -> bool:
        return self.label(i, j) == 2

    def neighbors(self, i: int):
        out = []
        for (a, b), _m in self.labels:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def edge_labels(self):
        return [m for _e, m in self.labels]

    def has_infinite_label(self) -> bool:
        return any(m == INFINITY for m in self.edge_labels())

    def field_order(self) -> int:
        """lcm of the finite edge labels (the M of the common ground field)."""
        finite = [m for m in self.edge_labels() if m != INFINITY]
        return lcm(*finite) if finite else 1

    def disjoint_union(self, other: "CoxeterGraph") -> "CoxeterGraph":
        shifted = tuple(((i + self.n, j + self.n), m) for (i, j), m in other.labels)
        name = f"{self.name}x{other.name}" if self.name and other.name else ""
        return CoxeterGraph(self.n + other.n, self.labels + shifted, name)

    def display_vertex(self, i: int) -> str:
        return f"s{i + 1}"

    def __str__(self):
        return self.name or f"custom(n={self.n})"


def induced_subgraph(g: CoxeterGraph, vertices) -> tuple:
    """Induced graph on the given vertices plus the map new index -> old."""
    vs = sorted(vertices)
    pos = {v: k for k, v in enumerate(vs)}
    labels = tuple(
        ((pos[a], pos[b]), m) for (a, b), m in g.labels if a in pos and b in pos
    )
    return CoxeterGraph(len(vs), labels), tuple(vs)


def independent_sets(g: CoxeterGraph, k: int) -> list:
    """All independent k-subsets of the graph, lexicographically ordered."""
    if k < 0 or k > g.n:
        raise ValueError(f"k={k} out of range for n={g.n}")
    if k == 0:
        return [()]
    adjacency = [set(g.neighbors(i)) for i in range(g.n)]
    out = []
    for combo in itertools.combinations(range(g.n), k):
        if all(b not in adjacency[a] for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return out


def max_independent_size(g: CoxeterGraph) -> int:
    k = g.n
    while k > 0 and not independent_sets(g, k):
        k -= 1
    return k


@dataclass(frozen=True)
class ParabolicDeletion:
    """The two deletions used by the long exact sequence, with index maps
    back into the parent graph."""

    g_minus_s: CoxeterGraph
    minus_map: tuple  # new index -> parent index
    g_far: CoxeterGraph
    far_map: tuple
    b1: frozenset  # s and its neighbors


def parabolic_deletions(g: CoxeterGraph, s: int) -> ParabolicDeletion:
    if not 0 <= s < g.n:
        raise ValueError(f"generator {s} not in graph")
    b1 = frozenset({s} | set(g.neighbors(s)))
    minus, minus_map = induced_subgraph(g, [v for v in range(g.n) if v != s])
    far, far_map = induced_subgraph(g, [v for v in range(g.n) if v not in b1])
    return ParabolicDeletion(minus, minus_map, far, far_map, b1)


# ---------------------------------------------------------------------------
# named families and the graph-spec grammar


def _path(n: int, labels) -> list:
    return [(i, i + 1, labels[i]) for i in range(n - 1)]


def _family(family: str, rank: int) -> CoxeterGraph:
    name = f"{family}{rank}"
    if family == "A":
        if rank < 1:
            raise ValueError("A_n requires n >= 1")
        return CoxeterGraph.from_edges(rank, _path(rank, [3] * (rank - 1)), name)
    if family in ("B", "C"):
        if rank < 2:
            raise ValueError("B_n requires n >= 2")
        return CoxeterGraph.from_edges(rank, _path(rank, [3] * (rank - 2) + [4]), f"B{rank}")
    if family == "D":
        if rank < 4:
            raise ValueError("D_n requires n >= 4")
        edges = _path(rank - 1, [3] * (rank - 2))  # path 0..n-2, fork vertex n-3
        edges.append((rank - 3, rank - 1, 3))
        return CoxeterGraph.from_edges(rank, edges, name)
    if family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_n requires n in {6,7,8}")
        # Bourbaki numbering: the line 1-3-4-5-...-n with 2 attached to 4.
        edges = [(0, 2, 3), (1, 3, 3)]
        edges += [(i, i + 1, 3) for i in range(2, rank - 1)]
        return CoxeterGraph.from_edges(rank, edges, name)
    if family == "F":
        if rank != 4:
            raise ValueError("F_n requires n = 4")
        return CoxeterGraph.from_edges(4, _path(4, [3, 4, 3]), name)
    if family == "H":
        if rank not in (2, 3, 4):
            raise ValueError("H_n requires n in {2,3,4}")
        return CoxeterGraph.from_edges(rank, _path(rank, [5] + [3] * (rank - 2)), name)
    raise ValueError(f"unknown family {family!r}")


_FAMILY_RE = re.compile(r"^([ABCDEFH])(\d+)$")
_I2_RE = re.compile(r"^I2\((\d+)\)$")


def parse_graph(spec: str) -> CoxeterGraph:
    """Parse a graph spec: named families, x-products, or a custom edge list.

    Grammar: NAME := FAMILY RANK | "I2(" INT ")" | NAME "x" NAME |
    "custom;n=" INT ";edges=" (INT "-" INT ":" (INT | "inf"))("," ...)*.
    Custom edge endpoints are 1-based.
    """
    spec = spec.strip()
    if spec.startswith("custom;"):
        return _parse_custom(spec)
    parts = _split_product(spec)
    graphs = [_parse_atom(p) for p in parts]
    out = graphs[0]
    for g in graphs[1:]:
        out = out.disjoint_union(g)
    return out


def _split_product(spec: str):
    # "x" separates factors; it never occurs inside an atom name.
    parts = []
    depth = 0
    cur = ""
    for ch in spec:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    if any(not p for p in parts):
        raise ValueError(f"malformed graph spec {spec!r}")
    return parts


def _parse_atom(atom: str) -> CoxeterGraph:
    m = _I2_RE.match(atom)
    if m:
        p = int(m.group(1))
        if p < 2:
            raise ValueError("I2(p) requires p >= 2")
        name = f"I2({p})"
        if p == 2:
            return CoxeterGraph(2, (), name)
        return CoxeterGraph.from_edges(2, [(0, 1, p)], name)
    m = _FAMILY_RE.match(atom)
    if m:
        return _family(m.group(1), int(m.group(2)))
    raise ValueError(f"unknown group name {atom!r}")


def _parse_custom(spec: str) -> CoxeterGraph:
    m = re.match(r"^custom;n=(\d+);edges=(.*)$", spec)
    if not m:
        raise ValueError(f"malformed custom spec {spec!r}")
    n = int(m.group(1))
    edges = []
    body = m.group(2)
    if body:
        for item in body.split(","):
            em = re.match(r"^(\d+)-(\d+):(\d+|inf)$", item)
            if not em:
                raise ValueError(f"malformed edge {item!r}")
            i, j = int(em.group(1)) - 1, int(em.group(2)) - 1
            label = INFINITY if em.group(3) == "inf" else int(em.group(3))
            if label != INFINITY and label < 3:
                raise ValueError(f"edge label must be >= 3 or inf, got {item!r}")
            edges.append((i, j, label))
    return CoxeterGraph.from_edges(n, edges, spec)
