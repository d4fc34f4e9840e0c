"""Finite weighted graphs and the letters, words and paths built over them.

A structured edge of weight w expands into the letters a[1] .. a[w] and their
stars a[1]^* .. a[w]^*.  Words over vertices, edge letters and star letters
generate the free ring that the rewrite engine reduces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple


class GraphError(ValueError):
    """A graph, letter or word violates a structural requirement."""


class Letter(NamedTuple):
    """A single generator symbol.

    kind is "v" (vertex), "e" (edge letter) or "s" (star letter); the
    alphabetical order of the kinds also fixes the canonical letter order.
    index is 0 for vertices, otherwise the 1-based position within the
    weight of the structured edge called name.
    """

    kind: str
    name: str
    index: int


def vertex(name: str) -> Letter:
    return Letter("v", name, 0)


def edge(name: str, index: int) -> Letter:
    return Letter("e", name, index)


def star(name: str, index: int) -> Letter:
    return Letter("s", name, index)


Word = tuple  # tuple[Letter, ...]


@dataclass(frozen=True)
class StructuredEdge:
    id: str
    source: str
    range: str
    weight: int


@dataclass(frozen=True)
class WeightedGraph:
    """A finite directed graph whose structured edges carry positive weights."""

    vertices: tuple[str, ...]
    edges: tuple[StructuredEdge, ...]

    @cached_property
    def edge_by_id(self) -> dict[str, StructuredEdge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[StructuredEdge, ...]]:
        out: dict[str, list[StructuredEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(sorted(es, key=lambda e: e.id)) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[StructuredEdge, ...]]:
        inc: dict[str, list[StructuredEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.range].append(e)
        return {v: tuple(sorted(es, key=lambda e: e.id)) for v, es in inc.items()}

    def is_sink(self, v: str) -> bool:
        return not self.out_edges[v]

    def letter_source(self, x: Letter) -> str:
        if x.kind == "v":
            return x.name
        e = self.edge_by_id[x.name]
        return e.source if x.kind == "e" else e.range

    def letter_range(self, x: Letter) -> str:
        if x.kind == "v":
            return x.name
        e = self.edge_by_id[x.name]
        return e.range if x.kind == "e" else e.source

    def edge_letters(self) -> tuple[Letter, ...]:
        """All edge and star letters in canonical order."""
        out = []
        for e in self.edges:
            for i in range(1, e.weight + 1):
                out.append(edge(e.id, i))
                out.append(star(e.id, i))
        return tuple(sorted(out))

    def all_letters(self) -> tuple[Letter, ...]:
        return tuple(sorted(self.edge_letters() + tuple(vertex(v) for v in self.vertices)))


def weighted_graph(vertices: Iterable[str], edges: Iterable) -> WeightedGraph:
    """Build a graph from vertex names and (id, source, range, weight) tuples."""
    built = tuple(e if isinstance(e, StructuredEdge) else StructuredEdge(*e) for e in edges)
    return WeightedGraph(tuple(vertices), built)


def validate_graph(g: WeightedGraph) -> list[str]:
    """Return all structural violations; an empty list means the graph is valid."""
    problems = []
    seen: set[str] = set()
    for v in g.vertices:
        if not v or not v.isascii() or any(c.isspace() for c in v):
            problems.append(f"vertex {v!r}: identifier must be nonempty ASCII without whitespace")
        if v in seen:
            problems.append(f"vertex {v}: duplicate identifier")
        seen.add(v)
    vertex_names = set(g.vertices)
    edge_ids: set[str] = set()
    for e in g.edges:
        if not e.id or not e.id.isascii() or any(c.isspace() for c in e.id):
            problems.append(f"edge {e.id!r}: identifier must be nonempty ASCII without whitespace")
        if e.id in edge_ids:
            problems.append(f"edge {e.id}: duplicate identifier")
        if e.id in vertex_names:
            problems.append(f"edge {e.id}: identifier collides with a vertex")
        edge_ids.add(e.id)
        if not isinstance(e.weight, int) or e.weight < 1:
            problems.append(f"edge {e.id}: weight >= 1 required (got {e.weight!r})")
        if e.source not in vertex_names:
            problems.append(f"edge {e.id}: source {e.source} is not a declared vertex")
        if e.range not in vertex_names:
            problems.append(f"edge {e.id}: range {e.range} is not a declared vertex")
    return problems


def require_valid(g: WeightedGraph) -> None:
    problems = validate_graph(g)
    if problems:
        raise GraphError("; ".join(problems))


def vertex_weight(g: WeightedGraph, v: str) -> int:
    """Largest weight among the structured edges leaving v."""
    if v not in g.out_edges:
        raise GraphError(f"unknown vertex {v}")
    outs = g.out_edges[v]
    if not outs:
        raise GraphError(f"vertex {v} is a sink and has no weight")
    return max(e.weight for e in outs)


def special_edge(g: WeightedGraph, v: str) -> str:
    """The chosen maximal-weight edge at v: least id among those of top weight.

    The normal form depends on this choice, so it is pinned deterministically.
    """
    w = vertex_weight(g, v)
    return min(e.id for e in g.out_edges[v] if e.weight == w)


def special_assignment(g: WeightedGraph) -> dict[str, str]:
    return {v: special_edge(g, v) for v in g.vertices if not g.is_sink(v)}


def _check_letters(g: WeightedGraph, w: Word) -> None:
    for x in w:
        if x.kind == "v":
            if x.name not in g.out_edges:
                raise GraphError(f"unknown vertex letter {x.name}")
        elif x.kind in ("e", "s"):
            e = g.edge_by_id.get(x.name)
            if e is None:
                raise GraphError(f"unknown edge letter {x.name}")
            if not 1 <= x.index <= e.weight:
                raise GraphError(f"index {x.index} out of range for edge {x.name}")
        else:
            raise GraphError(f"unknown letter kind {x.kind!r}")


def is_generalized_path(g: WeightedGraph, w: Word) -> bool:
    """True for a single vertex letter, or edge/star letters chained range to source."""
    if not w:
        return False
    _check_letters(g, w)
    if len(w) == 1 and w[0].kind == "v":
        return True
    if any(x.kind == "v" for x in w):
        return False
    return all(g.letter_range(w[i]) == g.letter_source(w[i + 1]) for i in range(len(w) - 1))


def path_length(w: Word) -> int:
    """Length of a generalised path; a single vertex counts as length 0."""
    if len(w) == 1 and w[0].kind == "v":
        return 0
    return len(w)


def word_dual(w: Word) -> Word:
    """Reverse the word and swap edge letters with their stars (vertices fixed)."""
    flipped = {"e": "s", "s": "e", "v": "v"}
    return tuple(Letter(flipped[x.kind], x.name, x.index) for x in reversed(w))


def dual(g: WeightedGraph, p: Word) -> Word:
    """Dual of a generalised path; swaps its source and range."""
    if not is_generalized_path(g, p):
        raise GraphError("dual is only defined for generalised paths")
    return word_dual(p)


def word_source(g: WeightedGraph, w: Word) -> str:
    return g.letter_source(w[0])


def word_range(g: WeightedGraph, w: Word) -> str:
    return g.letter_range(w[-1])


def tree(g: WeightedGraph, v: str) -> frozenset[str]:
    """Vertices reachable from v along structured edges (including v)."""
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for e in g.out_edges[u]:
            if e.range not in seen:
                seen.add(e.range)
                queue.append(e.range)
    return frozenset(seen)


def weighted_vertices(g: WeightedGraph) -> frozenset[str]:
    return frozenset(v for v in g.vertices if not g.is_sink(v) and vertex_weight(g, v) > 1)


def weight_forest(g: WeightedGraph) -> frozenset[str]:
    """Union of the trees of all weighted vertices."""
    forest: set[str] = set()
    for v in weighted_vertices(g):
        forest |= tree(g, v)
    return frozenset(forest)


def find_path(g: WeightedGraph, u: str, v: str) -> tuple[str, ...] | None:
    """Shortest edge-id sequence from u to v, or None; empty tuple when u == v."""
    if u not in g.out_edges or v not in g.out_edges:
        raise GraphError("unknown vertex")
    if u == v:
        return ()
    prev: dict[str, tuple[str, str]] = {}
    queue = deque([u])
    seen = {u}
    while queue:
        w = queue.popleft()
        for e in g.out_edges[w]:
            if e.range not in seen:
                seen.add(e.range)
                prev[e.range] = (w, e.id)
                if e.range == v:
                    path = []
                    cur = v
                    while cur != u:
                        cur, eid = prev[cur]
                        path.append(eid)
                    return tuple(reversed(path))
                queue.append(e.range)
    return None


def connected_components(g: WeightedGraph) -> tuple[tuple[str, ...], ...]:
    """Partition of the vertices under two-sided generalised-path reachability."""
    neighbours: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in g.edges:
        neighbours[e.source].add(e.range)
        neighbours[e.range].add(e.source)
    seen: set[str] = set()
    parts = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in neighbours[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        parts.append(tuple(sorted(comp)))
    return tuple(sorted(parts))


def word_sort_key(w: Word):
    """Canonical order on words: by path length, then letterwise.

    A single vertex counts as length 0, so vertices sort before letters.
    """
    return (path_length(w), w)


def format_letter(x: Letter) -> str:
    if x.kind == "v":
        return x.name
    if x.kind == "e":
        return f"{x.name}[{x.index}]"
    return f"{x.name}[{x.index}]^*"


def format_word(w: Word) -> str:
    return "*".join(format_letter(x) for x in w)
