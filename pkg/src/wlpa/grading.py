"""Multi-degree grading of normal forms and the local valuation.

The grading lives in Z^n where n is the largest edge weight: the i-th letter
of an edge has degree e_i, its star -e_i, vertices degree zero.  The local
valuation of an element is the longest path in the support of its normal
form, with max() of the empty support being minus infinity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elements import FreeRingElement, monomial
from .graph import GraphError, WeightedGraph, Word, edge, is_generalized_path, path_length, star
from .rewrite import multiply, normal_form, system_for, vertex_element
from .rings import ZZ
from .testkit import SamplerConfig, SplitMix64, draw_element

NEG_INFINITY = float("-inf")


def grading_rank(g: WeightedGraph) -> int:
    return max((e.weight for e in g.edges), default=0)


def degree(g: WeightedGraph, w: Word) -> tuple[int, ...]:
    """Componentwise sum of letter degrees along a generalised path."""
    if not is_generalized_path(g, w):
        raise GraphError("degree is only defined for generalised paths")
    vec = [0] * grading_rank(g)
    for x in w:
        if x.kind == "e":
            vec[x.index - 1] += 1
        elif x.kind == "s":
            vec[x.index - 1] -= 1
    return tuple(vec)


def homogeneous_components(g: WeightedGraph, a: FreeRingElement) -> dict[tuple[int, ...], FreeRingElement]:
    """Split the normal form of a by degree; the components sum back to NF(a)."""
    rs = system_for(g)
    nf = normal_form(rs, a)
    buckets: dict[tuple[int, ...], dict] = {}
    for word, coeff in nf.items():
        buckets.setdefault(degree(g, word), {})[word] = coeff
    return {
        d: FreeRingElement._from_clean(a.ring, terms)
        for d, terms in sorted(buckets.items())
    }


def support(g: WeightedGraph, a: FreeRingElement) -> tuple[Word, ...]:
    """Normal words occurring in NF(a) with nonzero coefficient, in canonical order."""
    rs = system_for(g)
    return tuple(word for word, _ in normal_form(rs, a).sorted_terms())


def local_valuation(g: WeightedGraph, a: FreeRingElement):
    """Longest path length in the support; minus infinity exactly for zero."""
    words = support(g, a)
    if not words:
        return NEG_INFINITY
    return max(path_length(w) for w in words)


@dataclass(frozen=True)
class ValuationCounterexample:
    axiom: int
    a: FreeRingElement
    b: FreeRingElement | None
    vertex: str | None
    expected: object
    actual: object


@dataclass(frozen=True)
class ValuationReport:
    checked_pairs: int
    ok: bool
    counterexample: ValuationCounterexample | None


def _check_product_axiom(g, rs, a, b, v) -> ValuationCounterexample | None:
    va, vb = local_valuation(g, a), local_valuation(g, b)
    vab = local_valuation(g, multiply(rs, a, b))
    expected = va + vb
    if vab != expected:
        return ValuationCounterexample(4, a, b, v, expected, vab)
    return None


def check_valuation_axioms(g: WeightedGraph, sample_count: int = 500, seed: int = 0, ring=ZZ) -> ValuationReport:
    """Probe the four valuation axioms with canonical and random pairs.

    Canonical probes pair each star letter with its edge letter; these hit
    the structural failure shapes first, so non-multiplicative graphs fail
    with a minimal witness.  Random probes then draw element pairs and test
    multiplicativity across every vertex where both truncations survive.
    """
    rs = system_for(g)
    checked = 0
    for e in sorted(g.edges, key=lambda e: e.id):
        for i in range(1, e.weight + 1):
            a = monomial(ring, (star(e.id, i),))
            b = monomial(ring, (edge(e.id, i),))
            checked += 1
            ce = _check_product_axiom(g, rs, a, b, e.source)
            if ce is not None:
                return ValuationReport(checked, False, ce)
    rng = SplitMix64(seed)
    cfg = SamplerConfig(seed=seed, max_word_len=3, max_terms=3, coefficient_bound=4)
    pairs = 0
    while pairs < sample_count:
        a0 = draw_element(g, rng, cfg, ring)
        b0 = draw_element(g, rng, cfg, ring)
        for x in (a0, b0):
            value = local_valuation(g, x)
            if (value == NEG_INFINITY) != x.is_zero():
                return ValuationReport(checked, False, ValuationCounterexample(1, x, None, None, None, value))
            words = support(g, x)
            vertices_only = bool(words) and all(w[0].kind == "v" for w in words)
            if (value == 0) != vertices_only:
                return ValuationReport(checked, False, ValuationCounterexample(2, x, None, None, None, value))
        both = local_valuation(g, a0 + b0)
        bound = max(local_valuation(g, a0), local_valuation(g, b0))
        if both > bound:
            return ValuationReport(checked, False, ValuationCounterexample(3, a0, b0, None, bound, both))
        for v in sorted(g.vertices):
            a = multiply(rs, a0, vertex_element(ring, v))
            b = multiply(rs, vertex_element(ring, v), b0)
            if a.is_zero() or b.is_zero():
                continue
            pairs += 1
            checked += 1
            ce = _check_product_axiom(g, rs, a, b, v)
            if ce is not None:
                return ValuationReport(checked, False, ce)
            if pairs >= sample_count:
                break
    return ValuationReport(checked, True, None)
