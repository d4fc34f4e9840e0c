"""Confluent reduction system for a weighted graph and arithmetic on normal forms.

Every rule rewrites a short left-hand word into a signed sum of strictly
smaller words, where words are compared first by length and then by the
number of adjacent contraction pairs.  The rule set is confluent, so the
normal form of an element is independent of the reduction order; the test
suite verifies this empirically on every fixture graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .elements import FreeRingElement, monomial
from .graph import (
    GraphError,
    Letter,
    WeightedGraph,
    Word,
    _check_letters,
    edge,
    require_valid,
    special_assignment,
    star,
    vertex,
)
from .rings import ZZ, RingError

# rule families, in the order the deterministic policy prefers them
VERTEX_PRODUCT = 1        # v w
VERTEX_UNIT = 2           # v x and x v around an edge or star letter
DISCONNECTED = 3          # letter pairs whose endpoints do not meet
EDGE_STAR_CONTRACTION = 4 # a[i] a[j]^* for the chosen maximal edge a
STAR_EDGE_CONTRACTION = 5 # a[1]^* b[1] for cosourced a, b
GENERATOR_KILL = 6        # quotient systems only: a[1] and a[1]^* vanish
LOOP_COMPLETION = 7       # quotient systems only: b[1] b[1]^*
STAR_COMPLETION = 8       # quotient systems only: a[2]^* a[2]


@dataclass(frozen=True)
class ReductionRule:
    family: int
    lhs: Word
    rhs: tuple  # tuple[(Word, sign), ...] with sign +1 or -1


class ReductionSystem:
    """All rules for one graph together with the special-edge choice.

    Immutable after construction and safe to share between threads.
    """

    def __init__(self, graph: WeightedGraph, special: dict[str, str], rules):
        self.graph = graph
        self.special = dict(special)
        self.rules = tuple(rules)
        by_lhs: dict[Word, ReductionRule] = {}
        for r in self.rules:
            if r.lhs in by_lhs:
                raise GraphError(f"duplicate rule left-hand side {r.lhs}")
            by_lhs[r.lhs] = r
        self.by_lhs = by_lhs
        self.pair_rules = {r.lhs: r for r in self.rules if len(r.lhs) == 2}
        self.unary_rules = {r.lhs[0]: r for r in self.rules if len(r.lhs) == 1}

    def redexes(self, word: Word) -> tuple:
        """All (position, rule) matches in the word, leftmost first."""
        out = []
        pairs = self.pair_rules
        unary = self.unary_rules
        n = len(word)
        for i in range(n):
            if i + 1 < n:
                r = pairs.get((word[i], word[i + 1]))
                if r is not None:
                    out.append((i, r))
            if unary:
                r = unary.get(word[i])
                if r is not None:
                    out.append((i, r))
        out.sort(key=lambda pr: (pr[0], pr[1].family))
        return tuple(out)

    def families(self, family: int) -> tuple[ReductionRule, ...]:
        return tuple(r for r in self.rules if r.family == family)


def build_reduction_system(graph: WeightedGraph) -> ReductionSystem:
    """Instantiate all rule families for a valid graph."""
    require_valid(graph)
    special = special_assignment(graph)
    rules: list[ReductionRule] = []

    for v in graph.vertices:
        for w in graph.vertices:
            rhs = (((vertex(v),), 1),) if v == w else ()
            rules.append(ReductionRule(VERTEX_PRODUCT, (vertex(v), vertex(w)), rhs))

    for v in graph.vertices:
        for e in graph.edges:
            for i in range(1, e.weight + 1):
                le, ls = edge(e.id, i), star(e.id, i)
                keep = (((le,), 1),)
                keep_star = (((ls,), 1),)
                rules.append(ReductionRule(VERTEX_UNIT, (vertex(v), le), keep if v == e.source else ()))
                rules.append(ReductionRule(VERTEX_UNIT, (le, vertex(v)), keep if v == e.range else ()))
                rules.append(ReductionRule(VERTEX_UNIT, (vertex(v), ls), keep_star if v == e.range else ()))
                rules.append(ReductionRule(VERTEX_UNIT, (ls, vertex(v)), keep_star if v == e.source else ()))

    letters = graph.edge_letters()
    for x in letters:
        for y in letters:
            if graph.letter_range(x) != graph.letter_source(y):
                rules.append(ReductionRule(DISCONNECTED, (x, y), ()))

    for v, aid in sorted(special.items()):
        a = graph.edge_by_id[aid]
        others = [o for o in graph.out_edges[v] if o.id != aid]
        for i in range(1, a.weight + 1):
            for j in range(1, a.weight + 1):
                rhs = []
                if i == j:
                    rhs.append(((vertex(v),), 1))
                for o in others:
                    # out-of-range letters of lighter edges count as zero
                    if i <= o.weight and j <= o.weight:
                        rhs.append(((edge(o.id, i), star(o.id, j)), -1))
                rules.append(
                    ReductionRule(EDGE_STAR_CONTRACTION, (edge(aid, i), star(aid, j)), tuple(rhs))
                )

    for v in graph.vertices:
        outs = graph.out_edges[v]
        for a in outs:
            for b in outs:
                rhs = []
                if a.id == b.id:
                    rhs.append(((vertex(a.range),), 1))
                for i in range(2, max(a.weight, b.weight) + 1):
                    if i <= a.weight and i <= b.weight:
                        rhs.append(((star(a.id, i), edge(b.id, i)), -1))
                rules.append(
                    ReductionRule(STAR_EDGE_CONTRACTION, (star(a.id, 1), edge(b.id, 1)), tuple(rhs))
                )

    return ReductionSystem(graph, special, rules)


@lru_cache(maxsize=None)
def system_for(graph: WeightedGraph) -> ReductionSystem:
    """Cached reduction system; graphs are hashable value objects."""
    return build_reduction_system(graph)


def _reduce_items(rs: ReductionSystem, ring, items) -> dict:
    """Fully reduce a term stream into a zero-free word -> coefficient dict."""
    pairs = rs.pair_rules
    unary = rs.unary_rules
    rzero = ring.zero
    neg = ring.neg
    add = ring.add
    out: dict[Word, object] = {}
    stack = [(w, c) for w, c in items]
    use_unary = bool(unary)
    while stack:
        w, c = stack.pop()
        rule = None
        pos = 0
        n = len(w)
        if use_unary:
            for i in range(n):
                if i + 1 < n:
                    r = pairs.get((w[i], w[i + 1]))
                    if r is not None:
                        rule, pos = r, i
                        break
                r = unary.get(w[i])
                if r is not None:
                    rule, pos = r, i
                    break
        else:
            for i in range(n - 1):
                r = pairs.get((w[i], w[i + 1]))
                if r is not None:
                    rule, pos = r, i
                    break
        if rule is None:
            prev = out.get(w)
            if prev is None:
                out[w] = c
            else:
                total = add(prev, c)
                if total == rzero:
                    del out[w]
                else:
                    out[w] = total
        else:
            pre = w[:pos]
            post = w[pos + len(rule.lhs):]
            for rw, sign in rule.rhs:
                stack.append((pre + rw + post, c if sign > 0 else neg(c)))
    return out


def normal_form(rs: ReductionSystem, element: FreeRingElement) -> FreeRingElement:
    """The unique irreducible representative of the element."""
    return FreeRingElement._from_clean(
        element.ring, _reduce_items(rs, element.ring, element.items())
    )


def _apply_at(element: FreeRingElement, word: Word, pos: int, rule: ReductionRule) -> FreeRingElement:
    ring = element.ring
    terms = dict(element._terms)
    coeff = terms.pop(word)
    pre = word[:pos]
    post = word[pos + len(rule.lhs):]
    for rw, sign in rule.rhs:
        new_word = pre + rw + post
        value = coeff if sign > 0 else ring.neg(coeff)
        prev = terms.get(new_word)
        total = value if prev is None else ring.add(prev, value)
        if total == ring.zero:
            terms.pop(new_word, None)
        else:
            terms[new_word] = total
    return FreeRingElement._from_clean(ring, terms)


def reduce_once(rs: ReductionSystem, element: FreeRingElement, rng=None):
    """Apply a single reduction; returns (element, applied).

    With rng None the policy is deterministic: first term in canonical word
    order, leftmost match, lowest rule family.  Otherwise rng.below(n) picks
    uniformly among all matches of the element.
    """
    if rng is None:
        for word, _ in element.sorted_terms():
            reds = rs.redexes(word)
            if reds:
                pos, rule = reds[0]
                return _apply_at(element, word, pos, rule), True
        return element, False
    candidates = [
        (word, pos, rule)
        for word, _ in element.sorted_terms()
        for pos, rule in rs.redexes(word)
    ]
    if not candidates:
        return element, False
    word, pos, rule = candidates[rng.below(len(candidates))]
    return _apply_at(element, word, pos, rule), True


def multiply(rs: ReductionSystem, a: FreeRingElement, b: FreeRingElement) -> FreeRingElement:
    """Product in the algebra: expand the free product, then reduce."""
    if a.ring != b.ring:
        raise RingError(f"mixed coefficient rings {a.ring!r} and {b.ring!r}")
    mul = a.ring.mul
    items = [(wa + wb, mul(ca, cb)) for wa, ca in a.items() for wb, cb in b.items()]
    return FreeRingElement._from_clean(a.ring, _reduce_items(rs, a.ring, items))


def star_element(rs: ReductionSystem, a: FreeRingElement) -> FreeRingElement:
    """The involution: dualize every word, then renormalize."""
    from .graph import word_dual

    items = [(word_dual(w), c) for w, c in a.items()]
    return FreeRingElement._from_clean(a.ring, _reduce_items(rs, a.ring, items))


def is_normal_word(rs: ReductionSystem, word: Word) -> bool:
    _check_letters(rs.graph, word)
    return not rs.redexes(word)


def is_contraction_pair(rs: ReductionSystem, x: Letter, y: Letter) -> bool:
    """The two adjacent shapes excluded from normal words.

    Either an edge/star pair of the chosen maximal edge of some vertex, or a
    star/edge pair at index one of any two structured edges.
    """
    if x.kind == "e" and y.kind == "s" and x.name == y.name:
        e = rs.graph.edge_by_id.get(x.name)
        return e is not None and rs.special.get(e.source) == x.name
    return x.kind == "s" and x.index == 1 and y.kind == "e" and y.index == 1


def word_measure(rs: ReductionSystem, word: Word) -> tuple[int, int]:
    """(length, number of adjacent contraction pairs); every rule application
    strictly decreases this measure of the affected word."""
    m = sum(
        1 for i in range(len(word) - 1) if is_contraction_pair(rs, word[i], word[i + 1])
    )
    return (len(word), m)


@dataclass(frozen=True)
class Ambiguity:
    """Two rules meeting inside one word.

    overlap: lhs(left) = a+b and lhs(right) = b+c.
    inclusion: lhs(left) = b sits inside lhs(right) = a+b+c.
    """

    kind: str
    left: ReductionRule
    right: ReductionRule
    a: Word
    b: Word
    c: Word

    @property
    def word(self) -> Word:
        return self.a + self.b + self.c


def enumerate_ambiguities(rs: ReductionSystem) -> tuple[Ambiguity, ...]:
    """All overlap and inclusion ambiguities between instantiated rules."""
    binary = [r for r in rs.rules if len(r.lhs) == 2]
    unary = [r for r in rs.rules if len(r.lhs) == 1]
    by_first: dict[Letter, list[ReductionRule]] = {}
    for r in binary:
        by_first.setdefault(r.lhs[0], []).append(r)
    out = []
    for s in binary:
        for t in by_first.get(s.lhs[1], ()):
            out.append(Ambiguity("overlap", s, t, s.lhs[:1], s.lhs[1:], t.lhs[1:]))
    for s in unary:
        x = s.lhs[0]
        for t in binary:
            for pos in (0, 1):
                if t.lhs[pos] == x:
                    out.append(Ambiguity("inclusion", s, t, t.lhs[:pos], s.lhs, t.lhs[pos + 1:]))
    return tuple(out)


def _rhs_items(rule: ReductionRule, ring, prefix: Word, suffix: Word):
    return [(prefix + rw + suffix, ring.one if sign > 0 else ring.neg(ring.one)) for rw, sign in rule.rhs]


def check_ambiguity_resolvable(rs: ReductionSystem, amb: Ambiguity, ring=ZZ) -> bool:
    """Reduce both one-step resolutions of the ambiguity and compare."""
    if amb.kind == "overlap":
        left = _rhs_items(amb.left, ring, (), amb.c)
        right = _rhs_items(amb.right, ring, amb.a, ())
    else:
        left = _rhs_items(amb.left, ring, amb.a, amb.c)
        right = _rhs_items(amb.right, ring, (), ())
    return _reduce_items(rs, ring, left) == _reduce_items(rs, ring, right)


def enumerate_normal_words(rs: ReductionSystem, max_len: int) -> list[Word]:
    """All irreducible words of path length at most max_len, canonically ordered.

    Vertices come first (length 0); longer words are generalised paths free of
    contraction pairs.
    """
    if max_len < 0:
        raise GraphError("max_len must be non-negative")
    g = rs.graph
    unary = rs.unary_rules
    out: list[Word] = [(vertex(v),) for v in sorted(g.vertices) if vertex(v) not in unary]
    if max_len == 0:
        return out
    letters = [x for x in g.edge_letters() if x not in unary]
    pairs = rs.pair_rules
    extensions = {
        x: [
            y
            for y in letters
            if g.letter_source(y) == g.letter_range(x) and (x, y) not in pairs
        ]
        for x in letters
    }
    level: list[Word] = [(x,) for x in letters]
    out.extend(level)
    for _ in range(2, max_len + 1):
        level = [w + (y,) for w in level for y in extensions[w[-1]]]
        out.extend(level)
    return out


def defining_relations(g: WeightedGraph, ring) -> list[FreeRingElement]:
    """The presenting relations of the algebra as free-ring elements.

    Every returned element reduces to zero; generator maps into another
    algebra are verified by pushing these through the map.
    """
    from .elements import FreeRingElement as _E

    out: list[FreeRingElement] = []

    def elem(items):
        return _E(ring, items)

    one = ring.one
    minus = ring.neg(one)
    for v in g.vertices:
        for w in g.vertices:
            items = [((vertex(v), vertex(w)), one)]
            if v == w:
                items.append(((vertex(v),), minus))
            out.append(elem(items))
    for e in g.edges:
        for i in range(1, e.weight + 1):
            le, ls = edge(e.id, i), star(e.id, i)
            out.append(elem([((vertex(e.source), le), one), ((le,), minus)]))
            out.append(elem([((le, vertex(e.range)), one), ((le,), minus)]))
            out.append(elem([((vertex(e.range), ls), one), ((ls,), minus)]))
            out.append(elem([((ls, vertex(e.source)), one), ((ls,), minus)]))
    for v in g.vertices:
        outs = g.out_edges[v]
        if not outs:
            continue
        top = max(e.weight for e in outs)
        for i in range(1, top + 1):
            for j in range(1, top + 1):
                items = [
                    ((edge(e.id, i), star(e.id, j)), one)
                    for e in outs
                    if i <= e.weight and j <= e.weight
                ]
                if i == j:
                    items.append(((vertex(v),), minus))
                out.append(elem(items))
    for a in g.edges:
        for b in g.edges:
            items = [
                ((star(a.id, i), edge(b.id, i)), one)
                for i in range(1, max(a.weight, b.weight) + 1)
                if i <= a.weight and i <= b.weight
            ]
            if a.id == b.id:
                items.append(((vertex(a.range),), minus))
            out.append(elem(items))
    return out


def vertex_element(ring, v: str) -> FreeRingElement:
    return monomial(ring, (vertex(v),))
