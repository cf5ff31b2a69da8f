"""Command-line front end.

Exit codes: 0 planar, 1 not planar, 2 usage or input error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from . import oracle, spqo
from .level_graph import LevelGraph, LevelGraphError, parse_level_graph, format_level_graph
from .orders import CircularOrder
from .sim_level import (
    BetweennessError,
    gen_gadget_2x3,
    gen_gadget_3x2,
    parse_betweenness,
    sim_test,
)
from .svg import render_svg, restrict
from .torus import TorusEmbedding, TorusResult, test_cyclic, test_radial, test_torus

EXIT_PLANAR, EXIT_NONPLANAR, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SURFACES = ("torus", "cyclic", "radial")


@dataclass
class Verdict:
    planar: bool
    levels: Mapping[int, Sequence[str]] = field(default_factory=dict)
    layers: Mapping[int, Sequence[str]] = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = ["planar" if self.planar else "not planar"]
        if self.planar:
            out += [f"level {i}: {', '.join(o)}" for i, o in sorted(self.levels.items())]
            out += [f"layer {i}: {', '.join(o)}" for i, o in sorted(self.layers.items()) if o]
        return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _circular_text(o: CircularOrder) -> tuple[str, ...]:
    return tuple(o.starting_at(min(o))) if len(o) else ()


def _visible(res: TorusResult) -> tuple[LevelGraph, TorusEmbedding]:
    """The embedded graph with vertices added by a surface reduction removed."""
    assert res.embedding is not None
    return restrict(res.graph, res.embedding, res.gadget)


def _torus_verdict(res: TorusResult) -> Verdict:
    if not res.planar:
        return Verdict(False)
    _, emb = _visible(res)
    levels = {i: _circular_text(o) for i, o in res.levels().items()}
    layers = {i: _circular_text(o) for i, o in emb.layers.items()}
    return Verdict(True, levels, layers)


def _solve(surface: str, g: LevelGraph) -> TorusResult:
    return {"torus": test_torus, "cyclic": test_cyclic, "radial": test_radial}[surface](g)


def cmd_test(args: argparse.Namespace) -> int:
    g = parse_level_graph(_read(args.file))
    res = _solve(args.surface, g)
    if args.dump_instance:
        if res.instance is None:
            print("(no instance: decided without a PQ-ordering instance)")
        else:
            print(spqo.dump(res.instance))
    verdict = _torus_verdict(res)
    print("\n".join(verdict.lines()))
    return EXIT_PLANAR if res.planar else EXIT_NONPLANAR


def cmd_oracle(args: argparse.Namespace) -> int:
    g = parse_level_graph(_read(args.file))
    budget = oracle.OracleBudget(args.max_per_level, args.max_layer_edges, args.max_total)
    if args.surface == "cyclic":
        r = oracle.brute_cyclic(g, budget)
        verdict = Verdict(r.planar, r.levels())
    else:
        fn = oracle.brute_torus if args.surface == "torus" else oracle.brute_radial
        r = fn(g, budget)
        verdict = Verdict(r.planar, {i: _circular_text(CircularOrder(o)) for i, o in r.levels().items()})
    print("\n".join(verdict.lines()))
    return EXIT_PLANAR if r.planar else EXIT_NONPLANAR


def cmd_sim_test(args: argparse.Namespace) -> int:
    g = parse_level_graph(_read(args.file))
    budget = oracle.OracleBudget(max_total=args.max_total)
    res = sim_test(g, budget)
    print("simultaneously planar" if res.planar else "not simultaneously planar")
    if res.planar and res.orders:
        for i, o in sorted(res.orders.items()):
            print(f"level {i}: {', '.join(o)}")
    return EXIT_PLANAR if res.planar else EXIT_NONPLANAR


def cmd_gen(args: argparse.Namespace) -> int:
    b = parse_betweenness(_read(args.file))
    g = gen_gadget_3x2(b) if args.family == "betweenness-3x2" else gen_gadget_2x3(b)
    sys.stdout.write(format_level_graph(g))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    g = parse_level_graph(_read(args.file))
    res = _solve(args.surface, g)
    if not res.planar:
        print(f"not planar on the {args.surface}; nothing to render", file=sys.stderr)
        return EXIT_NONPLANAR
    h, emb = _visible(res)
    svg = render_svg(h, emb, labelled=res.original)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return EXIT_PLANAR


def selfcheck(out=None) -> bool:
    """Pipeline against the oracles on every tiny proper graph; True iff all agree."""
    out = out or sys.stdout
    ok = True
    corpus = [(2, (1, 1)), (2, (2, 1)), (2, (2, 2)), (3, (1, 1, 1)), (3, (2, 1, 1)), (3, (2, 2, 1)), (3, (2, 2, 2))]
    for k, sizes in corpus:
        bad = count = 0
        for g in oracle.iter_tiny_graphs(k, sizes):
            count += 1
            pairs = [
                (test_torus(g).planar, oracle.brute_torus(g).planar),
                (test_cyclic(g).planar, oracle.brute_cyclic(g).planar),
                (test_radial(g).planar, oracle.brute_radial(g).planar),
            ]
            bad += any(a != b for a, b in pairs)
        ok &= bad == 0
        print(f"k={k} sizes={sizes}: {count} graphs, {bad} disagreements", file=out)
    print("selfcheck " + ("passed" if ok else "FAILED"), file=out)
    return ok


def cmd_selfcheck(args: argparse.Namespace) -> int:
    return 0 if selfcheck() else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit with 2 and one line
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="levelplan", description="Level planarity on the torus, cylinders and in the plane.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("test", help="decide planarity with the PQ-ordering pipeline")
    t.add_argument("--surface", choices=SURFACES, default="torus")
    t.add_argument("--dump-instance", action="store_true", help="print the normalized PQ-ordering instance")
    t.add_argument("file", help="level graph file, or - for stdin")
    t.set_defaults(func=cmd_test)

    o = sub.add_parser("oracle", help="decide planarity by brute force")
    o.add_argument("--surface", choices=SURFACES, default="torus")
    o.add_argument("--max-per-level", type=int, default=8)
    o.add_argument("--max-layer-edges", type=int, default=8)
    o.add_argument("--max-total", type=int, default=2_000_000)
    o.add_argument("file")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("sim-test", help="simultaneous level planarity of graphs tagged by id")
    s.add_argument("--max-total", type=int, default=2_000_000)
    s.add_argument("file")
    s.set_defaults(func=cmd_sim_test)

    gen = sub.add_parser("gen", help="hardness gadget for a betweenness instance")
    gen.add_argument("family", choices=("betweenness-3x2", "betweenness-2x3"))
    gen.add_argument("file", help="betweenness file, or - for stdin")
    gen.set_defaults(func=cmd_gen)

    r = sub.add_parser("render", help="write an SVG of a witness embedding")
    r.add_argument("--surface", choices=SURFACES, default="torus")
    r.add_argument("file")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("selfcheck", help="compare the pipeline with the oracles on tiny graphs")
    c.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except oracle.BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (LevelGraphError, BetweennessError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
