import pytest
from conftest import g_e, g_l23, g_rose

from wlpa import (
    GraphError,
    NEG_INFINITY,
    ZZ,
    check_valuation_axioms,
    degree,
    edge,
    grading_rank,
    homogeneous_components,
    local_valuation,
    monomial,
    multiply,
    star,
    support,
    system_for,
    vertex,
    zero,
)
from wlpa.rewrite import EDGE_STAR_CONTRACTION, STAR_EDGE_CONTRACTION
from wlpa.testkit import SamplerConfig, SplitMix64, draw_element


def mono(*letters):
    return monomial(ZZ, tuple(letters))


def test_degree_examples():
    g = g_e()
    assert grading_rank(g) == 2
    assert degree(g, (vertex("v"),)) == (0, 0)
    assert degree(g, (edge("alpha", 1),)) == (1, 0)
    assert degree(g, (star("alpha", 1),)) == (-1, 0)
    assert degree(g, (edge("alpha", 2), star("alpha", 1))) == (-1, 1)


def test_degree_rejects_non_paths():
    with pytest.raises(GraphError):
        degree(g_e(), (edge("alpha", 1), edge("alpha", 1)))


def test_homogeneous_components():
    g = g_e()
    e = mono(vertex("v")) - mono(star("alpha", 2), edge("alpha", 2))
    components = homogeneous_components(g, e)
    assert list(components) == [(0, 0)]
    assert components[(0, 0)] == e

    f = mono(edge("alpha", 1)) + mono(vertex("v"))
    components = homogeneous_components(g, f)
    assert set(components) == {(0, 0), (1, 0)}
    assert sum(components.values(), zero(ZZ)) == f

    assert homogeneous_components(g, zero(ZZ)) == {}


def test_support_examples():
    g = g_e()
    words = support(g, mono(star("alpha", 1), edge("alpha", 1)))
    assert set(words) == {(vertex("v"),), (star("alpha", 2), edge("alpha", 2))}
    assert support(g, zero(ZZ)) == ()
    assert support(g, mono(vertex("u")).scale(3)) == ((vertex("u"),),)


def test_local_valuation_examples():
    g = g_e()
    assert local_valuation(g, mono(vertex("v"))) == 0
    assert local_valuation(g, zero(ZZ)) == NEG_INFINITY
    rose = g_rose()
    assert local_valuation(rose, mono(star("alpha", 1), edge("beta", 1))) == 2


def test_contraction_rules_are_homogeneous(fixture_graph):
    g = fixture_graph
    rs = system_for(g)
    for rule in rs.rules:
        if rule.family not in (EDGE_STAR_CONTRACTION, STAR_EDGE_CONTRACTION):
            continue
        lhs_degree = degree(g, rule.lhs)
        for word, _ in rule.rhs:
            assert degree(g, word) == lhs_degree


def test_grading_multiplicative_on_homogeneous_parts():
    g = g_rose()
    rs = system_for(g)
    rng = SplitMix64(17)
    cfg = SamplerConfig(seed=17, max_word_len=3, max_terms=3)
    checked = 0
    while checked < 30:
        a = draw_element(g, rng, cfg)
        b = draw_element(g, rng, cfg)
        parts_a = homogeneous_components(g, a)
        parts_b = homogeneous_components(g, b)
        if not parts_a or not parts_b:
            continue
        da, ha = next(iter(parts_a.items()))
        db, hb = next(iter(parts_b.items()))
        expected = tuple(x + y for x, y in zip(da, db))
        for word in multiply(rs, ha, hb).words():
            assert degree(g, word) == expected
        checked += 1


def test_valuation_axioms_pass_on_lv_graphs():
    report = check_valuation_axioms(g_rose(), sample_count=150, seed=5)
    assert report.ok, report.counterexample
    report = check_valuation_axioms(g_l23(), sample_count=150, seed=6)
    assert report.ok, report.counterexample


def test_valuation_axioms_fail_on_g_e_with_minimal_witness():
    report = check_valuation_axioms(g_e(), sample_count=50, seed=7)
    assert not report.ok
    ce = report.counterexample
    assert ce.axiom == 4
    assert ce.a == mono(star("beta", 1))
    assert ce.b == mono(edge("beta", 1))
    assert ce.actual == 0
    assert ce.expected == 2


def test_valuation_additive_over_connecting_paths():
    # on an LV graph the valuation adds across a path inserted at a vertex
    g = g_rose()
    rs = system_for(g)
    rng = SplitMix64(23)
    cfg = SamplerConfig(seed=23, max_word_len=3, max_terms=3)
    v = monomial(ZZ, (vertex("v"),))
    path = monomial(ZZ, (edge("alpha", 1),))
    for _ in range(20):
        a = multiply(rs, draw_element(g, rng, cfg), v)
        b = multiply(rs, v, draw_element(g, rng, cfg))
        if a.is_zero() or b.is_zero():
            continue
        apb = multiply(rs, multiply(rs, a, path), b)
        assert local_valuation(g, apb) == local_valuation(g, a) + 1 + local_valuation(g, b)
