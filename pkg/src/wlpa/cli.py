"""Command line front end: graph files, expression parsing and reports.

Graph files hold one declaration per line, comments starting with '#':

    vertex <name>
    edge <name> <source> <range> <weight>

Expressions are sums of coefficient-scaled products of generators, where a
generator is a vertex name, an indexed edge like alpha[2], or its star
alpha[2]^*.  Coefficients are integers or integer fractions.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .classify import (
    ClassificationReport,
    leavitt_algebra_graph,
    wlpa_classify,
)
from .elements import FreeRingElement, format_element, monomial, zero
from .grading import NEG_INFINITY, homogeneous_components, local_valuation
from .graph import (
    GraphError,
    StructuredEdge,
    WeightedGraph,
    Word,
    edge,
    format_word,
    star,
    validate_graph,
    vertex,
)
from .rewrite import (
    check_ambiguity_resolvable,
    enumerate_ambiguities,
    enumerate_normal_words,
    multiply,
    normal_form,
    system_for,
)
from .rings import QQ, RingError, ring_from_name
from .testkit import run_confluence_suite


class ParseError(ValueError):
    pass


def parse_graph_file(text: str) -> WeightedGraph:
    """Parse the line-oriented graph format with positioned errors."""
    vertices: list[str] = []
    edges: list[StructuredEdge] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "vertex":
            if len(fields) != 2:
                raise ParseError(f"vertex needs exactly one name at line {lineno}")
            name = fields[1]
            if name in seen:
                raise ParseError(f"duplicate id {name} at line {lineno}")
            seen.add(name)
            vertices.append(name)
        elif kind == "edge":
            if len(fields) != 5:
                raise ParseError(
                    f"edge needs <name> <source> <range> <weight> at line {lineno}"
                )
            name, source, range_, weight_text = fields[1:]
            if name in seen:
                raise ParseError(f"duplicate id {name} at line {lineno}")
            for endpoint in (source, range_):
                if endpoint not in vertices:
                    raise ParseError(f"unknown vertex {endpoint} at line {lineno}")
            try:
                weight = int(weight_text)
            except ValueError:
                raise ParseError(f"non-integer weight {weight_text!r} at line {lineno}") from None
            if weight < 1:
                raise ParseError(f"weight must be at least 1 at line {lineno}")
            seen.add(name)
            edges.append(StructuredEdge(name, source, range_, weight))
        else:
            raise ParseError(f"unknown declaration {kind!r} at line {lineno}")
    graph = WeightedGraph(tuple(vertices), tuple(edges))
    problems = validate_graph(graph)
    if problems:
        raise ParseError("; ".join(problems))
    return graph


def emit_graph_file(g: WeightedGraph) -> str:
    """Inverse of parse_graph_file up to comments and blank lines."""
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.id} {e.source} {e.range} {e.weight}" for e in g.edges]
    return "\n".join(lines) + "\n"


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<star>\^\*)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<sym>[\[\]*+\-/])"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        pos = match.end()
        kind = match.lastgroup
        if kind != "ws":
            tokens.append((kind, match.group()))
    return tokens


class _ExpressionParser:
    def __init__(self, g: WeightedGraph, ring, text: str):
        self.g = g
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        token = self.peek()
        self.pos += 1
        return token

    def parse(self) -> FreeRingElement:
        total = zero(self.ring)
        negate = False
        if self.peek() == ("sym", "-"):
            self.take()
            negate = True
        term = self._term()
        total = total + (-term if negate else term)
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            _, op = self.take()
            term = self._term()
            total = total + (-term if op == "-" else term)
        if self.pos != len(self.tokens):
            raise ParseError(f"unexpected {self.peek()[1]!r} after expression")
        return total

    def _term(self) -> FreeRingElement:
        coeff = self.ring.one
        if self.peek()[0] == "int":
            numerator = int(self.take()[1])
            denominator = 1
            if self.peek() == ("sym", "/"):
                self.take()
                if self.peek()[0] != "int":
                    raise ParseError("expected an integer denominator")
                denominator = int(self.take()[1])
            coeff = self.ring.from_fraction(numerator, denominator)
            if self.peek() != ("sym", "*"):
                if coeff == self.ring.zero:
                    return zero(self.ring)
                raise ParseError("a coefficient must be followed by '*' and a generator")
            self.take()
        word = [self._factor()]
        while self.peek() == ("sym", "*"):
            self.take()
            word.append(self._factor())
        return monomial(self.ring, tuple(word), coeff)

    def _factor(self):
        kind, name = self.take()
        if kind != "name":
            raise ParseError(f"expected a generator, got {name!r}")
        if name in self.g.out_edges:
            if self.peek() == ("sym", "["):
                raise ParseError(f"{name} is a vertex and takes no index")
            return vertex(name)
        e = self.g.edge_by_id.get(name)
        if e is None:
            raise ParseError(f"unknown generator {name}")
        if self.peek() != ("sym", "["):
            raise ParseError(f"edge {name} needs an index like {name}[1]")
        self.take()
        if self.peek()[0] != "int":
            raise ParseError(f"expected an integer index for edge {name}")
        index = int(self.take()[1])
        if self.peek() != ("sym", "]"):
            raise ParseError(f"missing ']' after index of {name}")
        self.take()
        if index < 1:
            raise ParseError(f"index must be at least 1 for edge {name}")
        if index > e.weight:
            raise ParseError(f"index {index} exceeds weight {e.weight} of edge {name}")
        if self.peek()[0] == "star":
            self.take()
            return star(name, index)
        return edge(name, index)


def parse_expression(g: WeightedGraph, text: str, ring=QQ) -> FreeRingElement:
    """Parse a raw (not yet normalized) element over the given graph and ring."""
    return _ExpressionParser(g, ring, text).parse()


def _witness_json(report: ClassificationReport) -> dict:
    w = report.witnesses
    quotient = w.quotient
    return {
        "lr_normal_word": format_word(w.lr_normal_word) if w.lr_normal_word else None,
        "quotient_vertex": quotient.vertex if quotient else None,
        "quotient_generator": format_word(quotient.generator) if quotient else None,
        "quotient_residues": (
            [format_word(word) for word in quotient.strongly_normal_words] if quotient else None
        ),
        "zero_divisor": (
            [format_word(w.zero_divisor[0]), format_word(w.zero_divisor[1])]
            if w.zero_divisor
            else None
        ),
    }


def report_to_json(report: ClassificationReport) -> str:
    payload = {
        "reducible": report.reducible,
        "lv_graph": report.lv_graph,
        "lv_rose": report.lv_rose,
        "simple": report.simple.text(),
        "graded_simple": report.graded_simple.text(),
        "domain": report.domain.text(),
        "module_type": list(report.module_type) if report.module_type else None,
        "witnesses": _witness_json(report),
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def report_to_text(report: ClassificationReport) -> str:
    lines = [
        f"reducible: {report.reducible}",
        f"lv_graph: {'yes' if report.lv_graph else 'no'}",
        f"lv_rose: {'yes' if report.lv_rose else 'no'}",
        f"simple: {report.simple.text()}",
        f"graded_simple: {report.graded_simple.text()}",
        f"domain: {report.domain.text()}",
        f"module_type: {report.module_type if report.module_type else 'none'}",
    ]
    w = report.witnesses
    lines.append(
        f"lr_normal_witness: {format_word(w.lr_normal_word) if w.lr_normal_word else 'none'}"
    )
    if w.quotient:
        residues = " ".join(format_word(word) for word in w.quotient.strongly_normal_words[:8])
        lines.append(
            f"quotient_witness: {format_word(w.quotient.generator)} at {w.quotient.vertex}"
            f" (residues: {residues} ...)"
        )
    else:
        lines.append("quotient_witness: none")
    if w.zero_divisor:
        lines.append(
            f"zero_divisor: {format_word(w.zero_divisor[0])}, {format_word(w.zero_divisor[1])}"
        )
    else:
        lines.append("zero_divisor: none")
    return "\n".join(lines)


def _load_graph(path: str) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_graph_file(handle.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _ring(args):
    return ring_from_name(args.ring)


def _cmd_nf(args) -> int:
    g = _load_graph(args.graph)
    element = parse_expression(g, args.expr, _ring(args))
    print(format_element(normal_form(system_for(g), element)))
    return 0


def _cmd_mul(args) -> int:
    g = _load_graph(args.graph)
    ring = _ring(args)
    a = parse_expression(g, args.left, ring)
    b = parse_expression(g, args.right, ring)
    rs = system_for(g)
    print(format_element(multiply(rs, normal_form(rs, a), normal_form(rs, b))))
    return 0


def _cmd_valuation(args) -> int:
    g = _load_graph(args.graph)
    value = local_valuation(g, parse_expression(g, args.expr, _ring(args)))
    print("-inf" if value == NEG_INFINITY else str(value))
    return 0


def _cmd_degree(args) -> int:
    g = _load_graph(args.graph)
    components = homogeneous_components(g, parse_expression(g, args.expr, _ring(args)))
    if not components:
        raise ParseError("the zero element has no homogeneous degree")
    for deg, component in components.items():
        vector = "(" + ",".join(str(d) for d in deg) + ")"
        print(f"{vector} {format_element(component)}")
    return 0


def _cmd_basis(args) -> int:
    g = _load_graph(args.graph)
    for word in enumerate_normal_words(system_for(g), args.max_len):
        print(format_word(word))
    return 0


def _cmd_ambiguities(args) -> int:
    g = _load_graph(args.graph)
    rs = system_for(g)
    ambiguities = enumerate_ambiguities(rs)
    overlaps = [a for a in ambiguities if a.kind == "overlap"]
    inclusions = [a for a in ambiguities if a.kind == "inclusion"]
    print(f"overlap ambiguities: {len(overlaps)}")
    print(f"inclusion ambiguities: {len(inclusions)}")
    if args.check:
        unresolved = [a for a in ambiguities if not check_ambiguity_resolvable(rs, a)]
        print(f"resolvable: {len(ambiguities) - len(unresolved)}/{len(ambiguities)}")
        if unresolved or inclusions:
            print(
                f"internal assertion failure: {len(unresolved)} unresolved, "
                f"{len(inclusions)} inclusions",
                file=sys.stderr,
            )
            return 2
    return 0


def _cmd_classify(args) -> int:
    g = _load_graph(args.graph)
    report = wlpa_classify(g, _ring(args))
    print(report_to_json(report) if args.json else report_to_text(report))
    return 0


def _cmd_witness(args) -> int:
    g = _load_graph(args.graph)
    report = wlpa_classify(g, QQ)
    w = report.witnesses
    if w.lr_normal_word:
        print(f"lr-normal: {format_word(w.lr_normal_word)}")
    elif w.quotient:
        residues = " ".join(format_word(word) for word in w.quotient.strongly_normal_words[:8])
        print(
            f"quotient generator: {format_word(w.quotient.generator)} at {w.quotient.vertex};"
            f" nonzero residues: {residues}"
        )
    else:
        print("none")
    return 0


def _cmd_confluence(args) -> int:
    g = _load_graph(args.graph)
    report = run_confluence_suite(g, args.trials, args.seed)
    print(f"trials: {report.trials}")
    print(f"divergences: {report.divergences}")
    if not report.ok:
        word, expected, got = report.first_divergence
        print(
            f"internal assertion failure: {format_word(word)} reduced to "
            f"{format_element(got)} instead of {format_element(expected)}",
            file=sys.stderr,
        )
        return 2
    print("PASS")
    return 0


def _cmd_leavitt(args) -> int:
    print(emit_graph_file(leavitt_algebra_graph(args.n, args.k)), end="")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlpa",
        description="Normal forms, exact arithmetic and classification for "
        "weighted Leavitt path algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=handler)
        return p

    def add_ring(p):
        p.add_argument("--ring", default="Q", help="coefficients: Z, Q or Fp:<prime> (default Q)")

    p = add("nf", _cmd_nf, "normal form of an expression")
    p.add_argument("graph")
    p.add_argument("expr")
    add_ring(p)

    p = add("mul", _cmd_mul, "product of two expressions in normal form")
    p.add_argument("graph")
    p.add_argument("left")
    p.add_argument("right")
    add_ring(p)

    p = add("valuation", _cmd_valuation, "local valuation of an expression")
    p.add_argument("graph")
    p.add_argument("expr")
    add_ring(p)

    p = add("degree", _cmd_degree, "degrees of the homogeneous components")
    p.add_argument("graph")
    p.add_argument("expr")
    add_ring(p)

    p = add("basis", _cmd_basis, "normal words up to a path length")
    p.add_argument("graph")
    p.add_argument("--max-len", type=int, required=True)

    p = add("ambiguities", _cmd_ambiguities, "list rule ambiguities")
    p.add_argument("graph")
    p.add_argument("--check", action="store_true", help="verify all ambiguities resolve")

    p = add("classify", _cmd_classify, "structural classification report")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    add_ring(p)

    p = add("witness", _cmd_witness, "proper-ideal witness, if a construction applies")
    p.add_argument("graph")

    p = add("confluence", _cmd_confluence, "randomized confluence suite")
    p.add_argument("graph")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = add("leavitt", _cmd_leavitt, "emit the single-vertex graph with n+k loops of weight n")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GraphError, RingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def script_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    script_main()
