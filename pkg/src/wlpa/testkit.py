"""Deterministic samplers and brute-force oracles for cross-checking the engine.

All randomness flows through splitmix64, a fixed 64-bit generator, so any
failure replays from the graph and the seed alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .elements import FreeRingElement, monomial, zero
from .graph import (
    GraphError,
    WeightedGraph,
    Word,
    special_assignment,
    vertex,
    word_sort_key,
)
from .rewrite import ReductionSystem, normal_form, reduce_once, system_for
from .rings import ZZ

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 with the standard constants; identical output everywhere."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def choice(self, seq):
        return seq[self.below(len(seq))]


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    max_word_len: int = 4
    max_terms: int = 4
    coefficient_bound: int = 5


def draw_word(g: WeightedGraph, rng: SplitMix64, max_len: int) -> Word:
    """A uniformly random word over the full alphabet, length 1..max_len."""
    letters = g.all_letters()
    length = 1 + rng.below(max_len)
    return tuple(rng.choice(letters) for _ in range(length))


def draw_path_word(g: WeightedGraph, rng: SplitMix64, max_len: int) -> Word:
    """A random connected walk over edge and star letters (may hit dead ends)."""
    letters = g.edge_letters()
    if not letters:
        return (vertex(rng.choice(g.vertices)),)
    length = 1 + rng.below(max_len)
    word = [rng.choice(letters)]
    for _ in range(length - 1):
        here = g.letter_range(word[-1])
        options = [x for x in letters if g.letter_source(x) == here]
        if not options:
            break
        word.append(rng.choice(options))
    return tuple(word)


def draw_element(g: WeightedGraph, rng: SplitMix64, cfg: SamplerConfig, ring=ZZ) -> FreeRingElement:
    """One random element from an ongoing splitmix64 stream."""
    terms = []
    for _ in range(rng.below(cfg.max_terms + 1) if cfg.max_terms else 0):
        word = draw_word(g, rng, cfg.max_word_len)
        coeff = ring.zero
        while coeff == ring.zero:
            magnitude = 1 + rng.below(cfg.coefficient_bound)
            coeff = ring.coerce(-magnitude if rng.below(2) else magnitude)
        terms.append((word, coeff))
    return FreeRingElement(ring, terms)


def random_element(g: WeightedGraph, cfg: SamplerConfig, ring=ZZ) -> FreeRingElement:
    """Deterministic per config: the same (graph, cfg) always yields the same element."""
    return draw_element(g, SplitMix64(cfg.seed), cfg, ring)


def random_nonzero_element(g: WeightedGraph, rng: SplitMix64, cfg: SamplerConfig, ring=ZZ) -> FreeRingElement:
    while True:
        e = draw_element(g, rng, cfg, ring)
        if not e.is_zero():
            return e


def random_reduce(rs: ReductionSystem, element: FreeRingElement, seed: int) -> FreeRingElement:
    """Apply uniformly random reductions until no rule matches."""
    rng = SplitMix64(seed)
    current = element
    applied = True
    while applied:
        current, applied = reduce_once(rs, current, rng)
    return current


def brute_force_normal_words(g: WeightedGraph, max_len: int) -> list[Word]:
    """Filter every word of each length by the raw normality definition.

    Deliberately independent of the rewrite engine: generalised paths are
    recognised by chaining endpoints, and the two excluded pair shapes are
    matched literally.
    """
    if max_len > 5:
        raise GraphError("brute-force enumeration is capped at length 5")
    special = special_assignment(g)
    source_of = {e.id: e.source for e in g.edges}
    out: list[Word] = [(vertex(v),) for v in sorted(g.vertices)]
    letters = sorted(g.edge_letters())

    def blocked(x, y) -> bool:
        if x.kind == "e" and y.kind == "s" and x.name == y.name:
            if special.get(source_of[x.name]) == x.name:
                return True
        return x.kind == "s" and x.index == 1 and y.kind == "e" and y.index == 1

    for length in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=length):
            ok = True
            for i in range(length - 1):
                if g.letter_range(combo[i]) != g.letter_source(combo[i + 1]) or blocked(
                    combo[i], combo[i + 1]
                ):
                    ok = False
                    break
            if ok:
                out.append(combo)
    return out


@dataclass(frozen=True)
class ConfluenceReport:
    trials: int
    divergences: int
    first_divergence: tuple | None

    @property
    def ok(self) -> bool:
        return self.divergences == 0


def run_confluence_suite(g: WeightedGraph, trials: int, seed: int) -> ConfluenceReport:
    """Compare the deterministic normal form against random maximal reductions.

    Trials alternate between arbitrary words and random connected walks so
    multi-vertex graphs exercise the contraction rules, not just the
    annihilation rules.
    """
    rs = system_for(g)
    rng = SplitMix64(seed)
    divergences = 0
    first = None
    for trial in range(trials):
        if trial % 2 == 0:
            word = draw_word(g, rng, 8)
        else:
            word = draw_path_word(g, rng, 8)
        element = monomial(ZZ, word)
        expected = normal_form(rs, element)
        got = random_reduce(rs, element, seed=rng.next_u64())
        if expected != got:
            divergences += 1
            if first is None:
                first = (word, expected, got)
    return ConfluenceReport(trials, divergences, first)
