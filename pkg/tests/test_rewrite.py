import pytest
from conftest import g_e, g_l23, g_rose

from wlpa import (
    GF,
    QQ,
    ZZ,
    build_reduction_system,
    check_ambiguity_resolvable,
    defining_relations,
    edge,
    enumerate_ambiguities,
    enumerate_normal_words,
    is_generalized_path,
    is_normal_word,
    monomial,
    multiply,
    normal_form,
    reduce_once,
    star,
    star_element,
    system_for,
    vertex,
    weighted_graph,
    word_measure,
    zero,
)
from wlpa.rewrite import (
    DISCONNECTED,
    EDGE_STAR_CONTRACTION,
    STAR_EDGE_CONTRACTION,
    VERTEX_PRODUCT,
    VERTEX_UNIT,
)
from wlpa.testkit import SamplerConfig, SplitMix64, draw_element


def mono(ring, *letters):
    return monomial(ring, tuple(letters))


def test_contraction_rule_shapes_on_g_e():
    rs = system_for(g_e())
    # star/edge completion for the weight-2 edge paired with itself
    rule = rs.by_lhs[(star("alpha", 1), edge("alpha", 1))]
    assert rule.family == STAR_EDGE_CONTRACTION
    assert rule.rhs == (
        (((vertex("v"),)), 1),
        ((star("alpha", 2), edge("alpha", 2)), -1),
    )
    # edge/star contraction at u has an empty correction sum
    rule = rs.by_lhs[(edge("alpha", 1), star("alpha", 1))]
    assert rule.family == EDGE_STAR_CONTRACTION
    assert rule.rhs == (((vertex("u"),), 1),)


def test_contraction_rule_count_on_g_e():
    rs = system_for(g_e())
    # 4 at u (indices 1..2 squared), 1 at v, plus one completion pair per vertex
    assert len(rs.families(EDGE_STAR_CONTRACTION)) == 5
    assert len(rs.families(STAR_EDGE_CONTRACTION)) == 2
    total = len(rs.families(EDGE_STAR_CONTRACTION)) + len(rs.families(STAR_EDGE_CONTRACTION))
    assert total == 7


def test_out_of_range_letters_dropped():
    rs = system_for(g_rose())
    # alpha and delta have weights 3 and 2: the i=3 correction term vanishes
    rule = rs.by_lhs[(star("alpha", 1), edge("delta", 1))]
    assert rule.rhs == (((star("alpha", 2), edge("delta", 2)), -1),)


def test_reduce_once_examples():
    rs = system_for(g_e())
    result, applied = reduce_once(rs, mono(ZZ, vertex("u"), vertex("v")))
    assert applied and result.is_zero()
    e = mono(ZZ, edge("alpha", 2))
    result, applied = reduce_once(rs, e)
    assert not applied and result == e
    result, applied = reduce_once(rs, mono(ZZ, star("alpha", 1), edge("alpha", 1)))
    assert applied
    assert result == mono(ZZ, vertex("v")) - mono(ZZ, star("alpha", 2), edge("alpha", 2))


def test_normal_form_examples():
    rs = system_for(g_e())
    nf = normal_form(rs, mono(ZZ, star("alpha", 1), edge("alpha", 1)))
    assert nf == mono(ZZ, vertex("v")) - mono(ZZ, star("alpha", 2), edge("alpha", 2))
    already = mono(ZZ, edge("alpha", 1), edge("beta", 1))
    assert normal_form(rs, already) == already

    rs_rose = system_for(g_rose())
    nf = normal_form(rs_rose, mono(ZZ, star("alpha", 1), edge("beta", 1)))
    expected = -(
        mono(ZZ, star("alpha", 2), edge("beta", 2))
        + mono(ZZ, star("alpha", 3), edge("beta", 3))
    )
    assert nf == expected


def test_normal_form_only_contains_normal_paths(fixture_graph):
    rs = system_for(fixture_graph)
    rng = SplitMix64(11)
    cfg = SamplerConfig(seed=11, max_word_len=5, max_terms=4)
    for _ in range(40):
        e = draw_element(fixture_graph, rng, cfg)
        nf = normal_form(rs, e)
        for word in nf.words():
            assert is_normal_word(rs, word)
            assert is_generalized_path(fixture_graph, word)


def test_multiply_examples():
    rs = system_for(g_e())
    u = mono(QQ, vertex("u"))
    v = mono(QQ, vertex("v"))
    assert multiply(rs, u, v).is_zero()
    product = multiply(rs, mono(QQ, star("alpha", 1)), mono(QQ, edge("alpha", 1)))
    assert product == mono(QQ, vertex("v")) - mono(QQ, star("alpha", 2), edge("alpha", 2))
    assert multiply(rs, mono(QQ, edge("alpha", 1)), mono(QQ, edge("beta", 1))) == mono(
        QQ, edge("alpha", 1), edge("beta", 1)
    )


def test_multiply_bilinear():
    g = g_rose()
    rs = system_for(g)
    rng = SplitMix64(3)
    cfg = SamplerConfig(seed=3, max_word_len=3, max_terms=3)
    for _ in range(25):
        a = draw_element(g, rng, cfg)
        b = draw_element(g, rng, cfg)
        c = draw_element(g, rng, cfg)
        assert multiply(rs, a + b, c) == multiply(rs, a, c) + multiply(rs, b, c)
        assert multiply(rs, c, a + b) == multiply(rs, c, a) + multiply(rs, c, b)


def test_star_examples():
    rs = system_for(g_e())
    assert star_element(rs, mono(ZZ, edge("alpha", 1)).scale(2)) == mono(
        ZZ, star("alpha", 1)
    ).scale(2)
    w = mono(ZZ, edge("alpha", 1), edge("beta", 1))
    assert star_element(rs, w) == mono(ZZ, star("beta", 1), star("alpha", 1))
    e = mono(ZZ, vertex("v")) - mono(ZZ, star("alpha", 2), edge("alpha", 2))
    assert star_element(rs, star_element(rs, e)) == e


def test_star_antimultiplicative():
    g = g_l23()
    rs = system_for(g)
    rng = SplitMix64(8)
    cfg = SamplerConfig(seed=8, max_word_len=3, max_terms=3)
    for _ in range(25):
        a = draw_element(g, rng, cfg)
        b = draw_element(g, rng, cfg)
        assert star_element(rs, multiply(rs, a, b)) == multiply(
            rs, star_element(rs, b), star_element(rs, a)
        )


def test_ambiguity_table_entries_on_g_e():
    rs = system_for(g_e())
    ambiguities = enumerate_ambiguities(rs)
    assert all(a.kind == "overlap" for a in ambiguities)
    pairs = {(a.left.family, a.right.family, a.word) for a in ambiguities}
    # completion overlapping contraction: a1^* a1 aj^* for j in 1..2
    for j in (1, 2):
        word = (star("alpha", 1), edge("alpha", 1), star("alpha", j))
        assert (STAR_EDGE_CONTRACTION, EDGE_STAR_CONTRACTION, word) in pairs
    # contraction overlapping completion happens only for cosourced edges,
    # so only the weight-2 edge itself qualifies on this graph
    own = (edge("alpha", 1), star("alpha", 1), edge("alpha", 1))
    other = (edge("alpha", 1), star("alpha", 1), edge("beta", 1))
    assert (EDGE_STAR_CONTRACTION, STAR_EDGE_CONTRACTION, own) in pairs
    assert (EDGE_STAR_CONTRACTION, STAR_EDGE_CONTRACTION, other) not in pairs


def test_all_ambiguities_resolvable_small_fixtures():
    for g in (g_e(), g_l23()):
        rs = system_for(g)
        for amb in enumerate_ambiguities(rs):
            assert check_ambiguity_resolvable(rs, amb), amb.word


def test_enumerate_normal_words_counts():
    rs = system_for(g_e())
    assert len(enumerate_normal_words(rs, 0)) == 2
    assert len(enumerate_normal_words(rs, 1)) == 8
    exactly_two = [w for w in enumerate_normal_words(rs, 2) if len(w) == 2]
    assert len(exactly_two) == 11
    rs_rose = system_for(g_rose())
    assert len(enumerate_normal_words(rs_rose, 1)) == 1 + 2 * (3 + 3 + 3 + 2)


def test_normal_words_are_normal(fixture_graph):
    rs = system_for(fixture_graph)
    for word in enumerate_normal_words(rs, 3):
        assert is_normal_word(rs, word)


def test_word_measure_strictly_decreases_per_rule(fixture_graph):
    rs = system_for(fixture_graph)
    for rule in rs.rules:
        lhs_measure = word_measure(rs, rule.lhs)
        for rhs_word, _ in rule.rhs:
            assert word_measure(rs, rhs_word) < lhs_measure


def test_rule_families_partition_pairs(fixture_graph):
    rs = system_for(fixture_graph)
    families = {VERTEX_PRODUCT, VERTEX_UNIT, DISCONNECTED, EDGE_STAR_CONTRACTION, STAR_EDGE_CONTRACTION}
    assert {r.family for r in rs.rules} <= families
    assert len(rs.pair_rules) == len(rs.rules)  # every left side is distinct


def test_defining_relations_reduce_to_zero(fixture_graph):
    rs = system_for(fixture_graph)
    for ring in (ZZ, GF(5)):
        for relation in defining_relations(fixture_graph, ring):
            assert normal_form(rs, relation).is_zero()


def test_local_units(fixture_graph):
    g = fixture_graph
    rs = system_for(g)
    for word in enumerate_normal_words(rs, 2):
        p = monomial(QQ, word)
        left = monomial(QQ, (vertex(g.letter_source(word[0])),))
        right = monomial(QQ, (vertex(g.letter_range(word[-1])),))
        assert multiply(rs, left, p) == p
        assert multiply(rs, p, right) == p


def test_normal_form_linear_and_idempotent(fixture_graph):
    rs = system_for(fixture_graph)
    rng = SplitMix64(21)
    cfg = SamplerConfig(seed=21, max_word_len=4, max_terms=4)
    for _ in range(25):
        a = draw_element(fixture_graph, rng, cfg)
        b = draw_element(fixture_graph, rng, cfg)
        assert normal_form(rs, a + b) == normal_form(rs, a) + normal_form(rs, b)
        assert normal_form(rs, a.scale(3)) == normal_form(rs, a).scale(3)
        assert normal_form(rs, normal_form(rs, a)) == normal_form(rs, a)


def test_normal_form_matches_reduce_once_fixpoint():
    g = g_e()
    rs = system_for(g)
    rng = SplitMix64(31)
    cfg = SamplerConfig(seed=31, max_word_len=4, max_terms=3)
    for _ in range(15):
        e = draw_element(g, rng, cfg)
        current, applied = e, True
        while applied:
            current, applied = reduce_once(rs, current)
        assert current == normal_form(rs, e)


def test_build_rejects_invalid_graph():
    bad = weighted_graph(("u",), (("alpha", "u", "nowhere", 1),))
    with pytest.raises(Exception):
        build_reduction_system(bad)


def test_system_cache_returns_same_object():
    g = g_e()
    assert system_for(g) is system_for(g_e())
