"""Elements of the free ring over a graph's letters: finite sums coeff * word."""

from __future__ import annotations

from .graph import Word, format_word, word_sort_key
from .rings import RingError


class FreeRingElement:
    """A finite map from words to nonzero coefficients of one ring.

    Instances are immutable by convention: no method mutates self, so
    elements can be shared freely between threads.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring, terms=()):
        data: dict[Word, object] = {}
        items = terms.items() if hasattr(terms, "items") else terms
        zero = ring.zero
        for word, coeff in items:
            prev = data.get(word)
            total = coeff if prev is None else ring.add(prev, coeff)
            if total == zero:
                data.pop(word, None)
            else:
                data[word] = total
        self.ring = ring
        self._terms = data

    @classmethod
    def _from_clean(cls, ring, terms: dict) -> "FreeRingElement":
        # fast path for callers that already hold a zero-free dict
        obj = object.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        return obj

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coefficient(self, word: Word):
        return self._terms.get(word, self.ring.zero)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: word_sort_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreeRingElement)
            and self.ring == other.ring
            and self._terms == other._terms
        )

    def __add__(self, other: "FreeRingElement") -> "FreeRingElement":
        self._require_same_ring(other)
        merged = dict(self._terms)
        add = self.ring.add
        zero = self.ring.zero
        for word, coeff in other._terms.items():
            prev = merged.get(word)
            total = coeff if prev is None else add(prev, coeff)
            if total == zero:
                merged.pop(word, None)
            else:
                merged[word] = total
        return FreeRingElement._from_clean(self.ring, merged)

    def __neg__(self) -> "FreeRingElement":
        neg = self.ring.neg
        return FreeRingElement._from_clean(self.ring, {w: neg(c) for w, c in self._terms.items()})

    def __sub__(self, other: "FreeRingElement") -> "FreeRingElement":
        return self + (-other)

    def scale(self, coeff) -> "FreeRingElement":
        coeff = self.ring.coerce(coeff)
        if coeff == self.ring.zero:
            return FreeRingElement._from_clean(self.ring, {})
        mul = self.ring.mul
        out = {}
        zero = self.ring.zero
        for word, c in self._terms.items():
            v = mul(coeff, c)
            if v != zero:
                out[word] = v
        return FreeRingElement._from_clean(self.ring, out)

    def concat(self, other: "FreeRingElement") -> "FreeRingElement":
        """Free product: concatenate words pairwise without any rewriting."""
        self._require_same_ring(other)
        mul = self.ring.mul
        add = self.ring.add
        zero = self.ring.zero
        out: dict[Word, object] = {}
        for wa, ca in self._terms.items():
            for wb, cb in other._terms.items():
                word = wa + wb
                coeff = mul(ca, cb)
                prev = out.get(word)
                total = coeff if prev is None else add(prev, coeff)
                if total == zero:
                    out.pop(word, None)
                else:
                    out[word] = total
        return FreeRingElement._from_clean(self.ring, out)

    def _require_same_ring(self, other: "FreeRingElement") -> None:
        if self.ring != other.ring:
            raise RingError(f"mixed coefficient rings {self.ring!r} and {other.ring!r}")

    def __repr__(self) -> str:
        return f"<{self.ring.name}: {format_element(self)}>"


def zero(ring) -> FreeRingElement:
    return FreeRingElement._from_clean(ring, {})


def monomial(ring, word: Word, coeff=None) -> FreeRingElement:
    c = ring.one if coeff is None else ring.coerce(coeff)
    if c == ring.zero:
        return zero(ring)
    return FreeRingElement._from_clean(ring, {tuple(word): c})


def format_element(e: FreeRingElement) -> str:
    """Canonical rendering: terms in word order, coefficient 1 suppressed.

    The output round-trips through the expression parser, which makes golden
    tests on printed normal forms exact.
    """
    if e.is_zero():
        return "0"
    ring = e.ring
    parts = []
    for word, coeff in e.sorted_terms():
        negative, magnitude = ring.split_sign(coeff)
        body = format_word(word)
        if magnitude != ring.one:
            body = f"{ring.format(magnitude)}*{body}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)
