"""Structural classification of weighted graph algebras.

Covers reducibility of the graph, the associated unweighted graph with its
generator map, LV conditions, simplicity and graded simplicity over field
coefficients, the domain criterion with zero-divisor witnesses, module type
for qualifying single-vertex graphs, and two kinds of proper-ideal
witnesses: lr-normal paths and quotient reduction systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .elements import FreeRingElement, monomial, zero
from .graph import (
    GraphError,
    Letter,
    StructuredEdge,
    WeightedGraph,
    Word,
    edge,
    find_path,
    is_generalized_path,
    require_valid,
    special_assignment,
    star,
    vertex,
    weight_forest,
    weighted_vertices,
)
from .rewrite import (
    EDGE_STAR_CONTRACTION,
    GENERATOR_KILL,
    LOOP_COMPLETION,
    STAR_COMPLETION,
    Ambiguity,
    ReductionRule,
    ReductionSystem,
    check_ambiguity_resolvable,
    defining_relations,
    enumerate_ambiguities,
    enumerate_normal_words,
    normal_form,
    system_for,
)
from .rings import QQ, ZZ

REDUCIBLE = "reducible"
IRREDUCIBLE = "irreducible"
UNWEIGHTED = "unweighted"

_HS_VERTEX_LIMIT = 12  # subset enumeration is exponential; desk scale only


@dataclass(frozen=True)
class Verdict:
    value: str  # "yes" | "no" | "undetermined"
    reason: str | None = None

    def text(self) -> str:
        if self.value == "undetermined" and self.reason:
            return f"undetermined: {self.reason}"
        return self.value


YES = Verdict("yes")


def reducibility(g: WeightedGraph) -> str:
    """One of "reducible", "irreducible" or "unweighted"."""
    if not weighted_vertices(g):
        return UNWEIGHTED
    forest = weight_forest(g)
    for v in forest:
        if len(g.out_edges[v]) > 1:
            return IRREDUCIBLE
        if sum(1 for e in g.in_edges[v] if e.source in forest) > 1:
            return IRREDUCIBLE
    return REDUCIBLE


def is_reducible(g: WeightedGraph) -> bool:
    kind = reducibility(g)
    if kind == UNWEIGHTED:
        raise GraphError("reducibility is undefined for unweighted graphs")
    return kind == REDUCIBLE


def reduced_subgraph(g: WeightedGraph) -> WeightedGraph:
    """Restriction to the weight forest; edges with an endpoint outside are dropped."""
    forest = weight_forest(g)
    return WeightedGraph(
        tuple(v for v in g.vertices if v in forest),
        tuple(e for e in g.edges if e.source in forest and e.range in forest),
    )


@dataclass(frozen=True)
class GeneratorMap:
    """A letterwise assignment from one algebra's generators to elements of another."""

    source: WeightedGraph
    target: WeightedGraph
    ring: object
    images: Mapping[Letter, FreeRingElement]


def associated_unweighted_graph(g: WeightedGraph, ring=ZZ) -> tuple[WeightedGraph, GeneratorMap]:
    """The weight-one graph with one edge per letter, plus the generator map.

    Letters whose structured edge starts inside the weight forest are
    reversed in the new graph and map to stars; all others are kept.
    """
    forest = weight_forest(g)
    new_edges: list[StructuredEdge] = []
    images: dict[Letter, FreeRingElement] = {}
    for v in g.vertices:
        images[vertex(v)] = monomial(ring, (vertex(v),))
    for e in g.edges:
        reverse = e.source in forest
        for i in range(1, e.weight + 1):
            fid = f"e_{e.id}_{i}"
            if reverse:
                new_edges.append(StructuredEdge(fid, e.range, e.source, 1))
                images[edge(e.id, i)] = monomial(ring, (star(fid, 1),))
                images[star(e.id, i)] = monomial(ring, (edge(fid, 1),))
            else:
                new_edges.append(StructuredEdge(fid, e.source, e.range, 1))
                images[edge(e.id, i)] = monomial(ring, (edge(fid, 1),))
                images[star(e.id, i)] = monomial(ring, (star(fid, 1),))
    target = WeightedGraph(g.vertices, tuple(new_edges))
    return target, GeneratorMap(g, target, ring, images)


def map_element(gm: GeneratorMap, a: FreeRingElement) -> FreeRingElement:
    """Push an element through the map letter by letter, renormalized in the target."""
    if a.ring != gm.ring:
        raise GraphError("element ring does not match the generator map")
    rs = system_for(gm.target)
    total = zero(gm.ring)
    for word, coeff in a.items():
        prod = None
        for x in word:
            image = gm.images.get(x)
            if image is None:
                raise GraphError(f"generator map is not defined on {x}")
            prod = image if prod is None else prod.concat(image)
        total = total + prod.scale(coeff)
    return normal_form(rs, total)


def verify_generator_map(gm: GeneratorMap) -> bool:
    """True when the images of all defining relations vanish in the target."""
    for relation in defining_relations(gm.source, gm.ring):
        if not map_element(gm, relation).is_zero():
            return False
    return True


def is_lv_graph(g: WeightedGraph) -> bool:
    """Every edge weight at least 2 and at least two maximal edges per non-sink,
    on a connected graph with edges."""
    from .graph import connected_components, vertex_weight

    if not g.edges:
        return False
    if any(e.weight < 2 for e in g.edges):
        return False
    for v in g.vertices:
        if g.is_sink(v):
            continue
        top = vertex_weight(g, v)
        if sum(1 for e in g.out_edges[v] if e.weight == top) < 2:
            return False
    return len(connected_components(g)) == 1


def is_lv_rose(g: WeightedGraph) -> bool:
    return len(g.vertices) == 1 and is_lv_graph(g)


def module_type(g: WeightedGraph) -> tuple[int, int] | None:
    """(l, m) for an LV-rose of minimal weight 2, maximal weight l >= 3 and
    l + m structured edges with m > 0; absent otherwise."""
    if not is_lv_rose(g):
        return None
    weights = [e.weight for e in g.edges]
    l = max(weights)
    m = len(weights) - l
    if min(weights) == 2 and l >= 3 and m > 0:
        return (l, m)
    return None


def _require_unweighted(g: WeightedGraph) -> None:
    if any(e.weight != 1 for e in g.edges):
        raise GraphError("expected a graph of constant weight 1")


def hereditary_saturated_closure(g: WeightedGraph, seed) -> frozenset[str]:
    """Smallest vertex set containing the seed that is closed under following
    edges and under the saturation rule."""
    _require_unweighted(g)
    current = set(seed)
    changed = True
    while changed:
        changed = False
        for v in list(current):
            for e in g.out_edges[v]:
                if e.range not in current:
                    current.add(e.range)
                    changed = True
        for v in g.vertices:
            if v in current or g.is_sink(v):
                continue
            if all(e.range in current for e in g.out_edges[v]):
                current.add(v)
                changed = True
    return frozenset(current)


def all_hereditary_saturated(g: WeightedGraph) -> list[frozenset[str]]:
    """Every hereditary and saturated vertex set, by exhaustive subset scan."""
    _require_unweighted(g)
    if len(g.vertices) > _HS_VERTEX_LIMIT:
        raise GraphError(f"subset enumeration limited to {_HS_VERTEX_LIMIT} vertices")
    verts = list(g.vertices)
    found = []
    for mask in range(1 << len(verts)):
        subset = frozenset(v for k, v in enumerate(verts) if mask >> k & 1)
        hereditary = all(e.range in subset for v in subset for e in g.out_edges[v])
        saturated = all(
            v in subset
            for v in verts
            if not g.is_sink(v) and all(e.range in subset for e in g.out_edges[v])
        )
        if hereditary and saturated:
            found.append(subset)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def cycle_without_exit(g: WeightedGraph) -> tuple[str, ...] | None:
    """A cycle all of whose vertices have out-degree one, or None."""
    _require_unweighted(g)
    restricted = {v for v in g.vertices if len(g.out_edges[v]) == 1}
    for start in sorted(restricted):
        path = [start]
        seen = {start}
        v = start
        while True:
            nxt = g.out_edges[v][0].range
            if nxt == start:
                return tuple(path)
            if nxt not in restricted or nxt in seen:
                break
            seen.add(nxt)
            path.append(nxt)
            v = nxt
    return None


def lpa_is_graded_simple(g: WeightedGraph, ring=QQ) -> Verdict:
    """Graded simplicity of the algebra of an unweighted graph over a field."""
    _require_unweighted(g)
    if not ring.is_field:
        return Verdict("undetermined", "coefficients not a field")
    if len(g.vertices) > _HS_VERTEX_LIMIT:
        return Verdict("undetermined", f"more than {_HS_VERTEX_LIMIT} vertices")
    subsets = all_hereditary_saturated(g)
    proper = [s for s in subsets if s and s != frozenset(g.vertices)]
    if proper:
        witness = ",".join(sorted(proper[0]))
        return Verdict("no", f"proper hereditary saturated set {{{witness}}}")
    return YES


def lpa_is_simple(g: WeightedGraph, ring=QQ) -> Verdict:
    """Simplicity: graded simplicity plus every cycle having an exit."""
    graded = lpa_is_graded_simple(g, ring)
    if graded.value != "yes":
        return graded
    cycle = cycle_without_exit(g)
    if cycle is not None:
        return Verdict("no", f"cycle without exit through {','.join(cycle)}")
    return YES


def _l_normal(rs: ReductionSystem, x: Letter) -> bool:
    if x.kind == "v":
        return True
    if x.kind == "e":
        return x.index != 1
    e = rs.graph.edge_by_id[x.name]
    return rs.special.get(e.source) != x.name


def _r_normal(rs: ReductionSystem, x: Letter) -> bool:
    if x.kind == "v":
        return True
    if x.kind == "s":
        return x.index != 1
    e = rs.graph.edge_by_id[x.name]
    return rs.special.get(e.source) != x.name


def is_lr_normal(g: WeightedGraph, p: Word) -> bool:
    """True when no letter extends p into a contraction pair on either side."""
    rs = system_for(g)
    if not is_generalized_path(g, p) or rs.redexes(p):
        raise GraphError("expected a normal generalised path")
    return _l_normal(rs, p[0]) and _r_normal(rs, p[-1])


def _single_weighted_sources(g: WeightedGraph) -> dict[str, StructuredEdge]:
    """Weighted vertices emitting exactly one structured edge."""
    out = {}
    for v in sorted(weighted_vertices(g)):
        edges_out = g.out_edges[v]
        if len(edges_out) == 1:
            out[v] = edges_out[0]
    return out


def _reach_single_source(g, singles, target):
    """First single-edge weighted vertex with a path to target, plus that path."""
    for w in sorted(singles):
        path = find_path(g, w, target)
        if path is not None:
            return singles[w], path
    return None


def find_lr_normal_witness(g: WeightedGraph) -> Word | None:
    """A nontrivial lr-normal path certifying a proper graded ideal, or None.

    Three constructions are tried in order: a second weighted edge at a
    shared source; a branching vertex in the weight forest fed from a
    single-edge weighted vertex; and a pair of forest in-edges meeting at
    one vertex, each fed the same way.  Absence of a witness proves nothing.
    """
    special = special_assignment(g)
    for v in sorted(g.vertices):
        weighted_out = [e for e in g.out_edges[v] if e.weight >= 2]
        if len(weighted_out) >= 2:
            beta = min(e.id for e in weighted_out if e.id != special[v])
            witness = (edge(beta, 2),)
            if is_lr_normal(g, witness):
                return witness
    forest = weight_forest(g)
    singles = _single_weighted_sources(g)
    for v in sorted(forest):
        if len(g.out_edges[v]) < 2:
            continue
        hit = _reach_single_source(g, singles, v)
        if hit is None:
            continue
        alpha, path = hit
        if not path:
            continue  # the branching vertex itself is the single source
        beta = min(e.id for e in g.out_edges[v] if e.id != special[v])
        witness = (edge(alpha.id, 2),) + tuple(edge(eid, 1) for eid in path[1:]) + (edge(beta, 1),)
        if is_lr_normal(g, witness):
            return witness
    for v in sorted(forest):
        in_forest = [e for e in g.in_edges[v] if e.source in forest]
        if len(in_forest) < 2:
            continue
        for first in in_forest:
            for second in in_forest:
                if first.id == second.id:
                    continue
                head_hit = _reach_single_source(g, singles, first.source)
                tail_hit = _reach_single_source(g, singles, second.source)
                if head_hit is None or tail_hit is None:
                    continue
                gamma, p1 = head_hit
                epsilon, p2 = tail_hit
                if p1:
                    head = (
                        (edge(gamma.id, 2),)
                        + tuple(edge(eid, 1) for eid in p1[1:])
                        + (edge(first.id, 1),)
                    )
                else:
                    head = (edge(first.id, 2),)
                if p2:
                    tail = (
                        (star(second.id, 1),)
                        + tuple(star(eid, 1) for eid in reversed(p2[1:]))
                        + (star(epsilon.id, 2),)
                    )
                else:
                    tail = (star(second.id, 2),)
                witness = head + tail
                try:
                    if is_lr_normal(g, witness):
                        return witness
                except GraphError:
                    continue
    return None


def has_quotient_config(g: WeightedGraph, v: str) -> bool:
    outs = g.out_edges.get(v, ())
    weighted = [e for e in outs if e.weight >= 2]
    unweighted = [e for e in outs if e.weight == 1]
    return len(weighted) == 1 and bool(unweighted)


def quotient_system(g: WeightedGraph, v: str) -> tuple[ReductionSystem, StructuredEdge, StructuredEdge]:
    """Extend the base rules so the first letter of the weighted edge at v dies.

    Requires exactly one weighted edge alpha and at least one unweighted edge
    at v.  The extension adds kill rules for alpha[1] and alpha[1]^*, and two
    completion rules that keep the combined system confluent.
    """
    if not has_quotient_config(g, v):
        raise GraphError(
            f"vertex {v} needs exactly one weighted and at least one unweighted out-edge"
        )
    outs = g.out_edges[v]
    alpha = next(e for e in outs if e.weight >= 2)
    beta = min((e for e in outs if e.weight == 1), key=lambda e: e.id)
    base = system_for(g)
    assert base.special[v] == alpha.id  # unique maximal edge at v
    loop_rhs = [((vertex(v),), 1)]
    for other in outs:
        if other.id not in (alpha.id, beta.id):
            loop_rhs.append(((edge(other.id, 1), star(other.id, 1)), -1))
    star_rhs = [((vertex(alpha.range),), 1)]
    for i in range(3, alpha.weight + 1):
        star_rhs.append(((star(alpha.id, i), edge(alpha.id, i)), -1))
    extra = (
        ReductionRule(GENERATOR_KILL, (edge(alpha.id, 1),), ()),
        ReductionRule(GENERATOR_KILL, (star(alpha.id, 1),), ()),
        ReductionRule(LOOP_COMPLETION, (edge(beta.id, 1), star(beta.id, 1)), tuple(loop_rhs)),
        ReductionRule(STAR_COMPLETION, (star(alpha.id, 2), edge(alpha.id, 2)), tuple(star_rhs)),
    )
    return ReductionSystem(g, base.special, base.rules + extra), alpha, beta


@dataclass(frozen=True)
class QuotientWitness:
    vertex: str
    weighted_edge: str
    unweighted_edge: str
    generator: Word
    strongly_normal_words: tuple[Word, ...]
    ambiguity_count: int
    resolvable: bool


def quotient_witness(g: WeightedGraph, v: str) -> QuotientWitness:
    """Certify that the ideal generated by alpha[1] at v is proper.

    Runs the full ambiguity sweep of the extended system and enumerates its
    irreducible words up to length two; those words represent distinct
    nonzero residues of the quotient.
    """
    rs, alpha, beta = quotient_system(g, v)
    ambiguities = enumerate_ambiguities(rs)
    resolvable = all(check_ambiguity_resolvable(rs, amb) for amb in ambiguities)
    words = tuple(enumerate_normal_words(rs, 2))
    generator = (edge(alpha.id, 1),)
    if not normal_form(rs, monomial(ZZ, generator)).is_zero():
        raise GraphError("generator did not reduce to zero in the quotient system")
    return QuotientWitness(
        vertex=v,
        weighted_edge=alpha.id,
        unweighted_edge=beta.id,
        generator=generator,
        strongly_normal_words=words,
        ambiguity_count=len(ambiguities),
        resolvable=resolvable,
    )


def leavitt_algebra_graph(n: int, k: int) -> WeightedGraph:
    """Single vertex with n+k loops of weight n."""
    if n < 1 or k < 0:
        raise GraphError("need n >= 1 and k >= 0")
    edges = tuple(StructuredEdge(f"y{i}", "v", "v", n) for i in range(1, n + k + 1))
    return WeightedGraph(("v",), edges)


@dataclass(frozen=True)
class Witnesses:
    lr_normal_word: Word | None
    quotient: QuotientWitness | None
    zero_divisor: tuple[Word, Word] | None


@dataclass(frozen=True)
class ClassificationReport:
    reducible: str
    lv_graph: bool
    lv_rose: bool
    simple: Verdict
    graded_simple: Verdict
    domain: Verdict
    module_type: tuple[int, int] | None
    witnesses: Witnesses


def _domain_verdict(g: WeightedGraph, ring) -> Verdict:
    if not ring.is_domain:
        return Verdict("no", "coefficient ring is not a domain")
    if len(g.vertices) == 1:
        if not g.edges:
            return YES
        if len(g.edges) == 1 and g.edges[0].weight == 1:
            return YES
        if is_lv_rose(g):
            return YES
    return Verdict("no", "not a one-petal unweighted rose or an LV-rose")


def _zero_divisor_witness(g: WeightedGraph) -> tuple[Word, Word] | None:
    """A cheap pair multiplying to zero, when one is evident from the shape."""
    if len(g.vertices) >= 2:
        u, v = sorted(g.vertices)[:2]
        return ((vertex(u),), (vertex(v),))
    if g.edges and all(e.weight == 1 for e in g.edges) and len(g.edges) >= 2:
        a, b = sorted(e.id for e in g.edges)[:2]
        return ((star(a, 1),), (edge(b, 1),))
    return None


def wlpa_classify(g: WeightedGraph, ring=QQ) -> ClassificationReport:
    """Assemble every implemented verdict with its witnesses."""
    require_valid(g)
    kind = reducibility(g)
    target, _ = associated_unweighted_graph(g, ring)
    if kind == IRREDUCIBLE:
        # a proper graded ideal exists for any coefficient ring
        graded = Verdict("no", "irreducible weighted graph")
        simple = Verdict("no", "irreducible weighted graph")
    else:
        graded = lpa_is_graded_simple(target, ring)
        simple = lpa_is_simple(target, ring)
    domain = _domain_verdict(g, ring)
    quotient = None
    for v in sorted(g.vertices):
        if has_quotient_config(g, v):
            quotient = quotient_witness(g, v)
            break
    return ClassificationReport(
        reducible=kind,
        lv_graph=is_lv_graph(g),
        lv_rose=is_lv_rose(g),
        simple=simple,
        graded_simple=graded,
        domain=domain,
        module_type=module_type(g),
        witnesses=Witnesses(
            lr_normal_word=find_lr_normal_witness(g),
            quotient=quotient,
            zero_divisor=_zero_divisor_witness(g) if domain.value == "no" else None,
        ),
    )
