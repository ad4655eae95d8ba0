"""Command line: ``roundbip analyze | generate | fcn``.

Exit codes: 0 success, 1 a ``--verify`` run found problems, 2 the instance
lacks the required structure (e.g. ``S`` does not bipartize), 3 unreadable
input or invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import errors
from .bipartize import extend_to_bipartizing
from .coloring import (
    Coloring,
    auto_bipartizing_set,
    coloring_pipeline,
    heuristic_coloring,
    lightest_classes,
)
from .formats import Instance, parse_instance, parse_rational, serialize_instance
from .graph import Graph, cycle_graph
from .report import analysis_report, fcn_report, verify_analysis, verify_fcn
from .tightgen import (
    basic_weight,
    convex_weight,
    gen_alpha_bipartite,
    gen_alpha_rho,
    lifted_dual_weight,
    shortest_odd_cycles,
)

EXIT_OK, EXIT_VERIFY, EXIT_STRUCTURE, EXIT_INPUT = 0, 1, 2, 3

_INPUT_ERRORS = (
    errors.ParseError,
    errors.InvalidParams,
    errors.InvalidCycle,
    errors.InvalidCombination,
    errors.InvalidSet,
    errors.InvalidRho,
    errors.NotIndependent,
    errors.DegenerateWeights,
    errors.InvalidSolution,
)


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except errors.ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _id_list(text: str) -> list[int]:
    try:
        return [int(t) - 1 for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None


def _classes(text: str) -> Coloring:
    return Coloring.of([_id_list(part) for part in text.split(";")])


def _load_report(path: str) -> dict:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise errors.ParseError(f"report is not valid JSON: {exc}") from None


def _finish_verify(problems: list[str]) -> int:
    if problems:
        for p in problems:
            print(f"FAIL {p}", file=sys.stderr)
        return EXIT_VERIFY
    print("verification passed", file=sys.stderr)
    return EXIT_OK


def cmd_analyze(args) -> int:
    inst = parse_instance(_read_text(args.instance)) if args.instance else None
    if args.verify:
        return _finish_verify(verify_analysis(_load_report(args.verify), inst.graph if inst else None))
    if inst is None:
        raise UsageError("analyze needs an instance file")
    g = inst.graph
    s = inst.s or frozenset()
    pipeline = None
    if args.auto_color:
        coloring = heuristic_coloring(g)
        if coloring.k >= 4:
            try:
                pipeline = coloring_pipeline(g, coloring)
                s = pipeline.s
            except errors.NotInQW:
                s = lightest_classes(g, coloring)
        else:
            s = auto_bipartizing_set(g, coloring)
    if args.greedy_bipartize:
        s = extend_to_bipartizing(g, s)
    rep = analysis_report(g, s, inst.dual, args.brute_max, pipeline)
    _emit(json.dumps(rep, indent=2) + "\n", args.output)
    failed = [name for name, ok in rep["checks"].items() if not ok]
    print(
        f"rho={rep['rho']} alpha={rep['alpha']} case={rep['caseTag']} "
        f"bound={rep['bound']} achieved={rep['achieved']} ({rep['optMode']})",
        file=sys.stderr,
    )
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _flower(petals: int, length: int) -> Graph:
    """``petals`` odd cycles of the given length sharing vertex 0."""
    edges, n = [], 1
    for _ in range(petals):
        path = list(range(n, n + length - 1))
        n += length - 1
        edges += [(0, path[0])] + list(zip(path, path[1:])) + [(path[-1], 0)]
    return Graph.from_edges(n, edges)


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "basic":
        if args.cycle < 3 or args.cycle % 2 == 0:
            raise errors.InvalidParams("--cycle must be an odd length of at least 3")
        g = cycle_graph(args.cycle)
        inst = basic_weight(g, args.apex - 1 if args.apex else 0, list(g.vertices))
        desc = f"basic weights on C{args.cycle}"
    elif fam == "convex":
        if args.petals < 1 or args.len < 3 or args.len % 2 == 0:
            raise errors.InvalidParams("--petals must be positive and --len odd, at least 3")
        g = _flower(args.petals, args.len)
        found = shortest_odd_cycles(g, 0, args.limit_cycles)
        cycles = found.cycles
        if args.seed is None:
            draws = [1] * len(cycles)
        else:
            rng = random.Random(args.seed)
            draws = [rng.randint(1, 12) for _ in cycles]
        lam = {c.vertices: Fraction(d, sum(draws)) for c, d in zip(cycles, draws)}
        inst = convex_weight(g, 0, lam)
        desc = f"convex combination over {len(cycles)} cycles" + (" (truncated)" if found.truncated else "")
    elif fam == "lifted":
        if args.len < 3 or args.len % 2 == 0:
            raise errors.InvalidParams("--len must be odd and at least 3")
        g = cycle_graph(args.len)
        inst = lifted_dual_weight(g, _id_list(args.indep))
        desc = f"lifted cycle dual on C{args.len} with I = {{{args.indep}}}"
    elif fam == "alpha-rho":
        if args.alpha is None or args.rho is None:
            raise errors.InvalidParams("alpha-rho needs --alpha and --rho")
        inst = gen_alpha_rho(args.alpha, args.rho)
        desc = f"triangle-expanded cycle, alpha = {args.alpha}, rho = {args.rho}"
    else:
        if args.alpha is None:
            raise errors.InvalidParams("alpha-bip needs --alpha")
        inst = gen_alpha_bipartite(args.alpha, args.len)
        desc = f"odd cycle with bipartite contraction, alpha = {args.alpha}, length {args.len}"
    out = Instance(
        inst.graph,
        inst.s,
        inst.dual,
        (f"roundbip generate {fam}: {desc}", f"expected ratio {inst.expected_ratio}"),
    )
    _emit(serialize_instance(out), args.output)
    return EXIT_OK


def cmd_fcn(args) -> int:
    inst = parse_instance(_read_text(args.instance)) if args.instance else None
    if args.verify:
        return _finish_verify(verify_fcn(_load_report(args.verify), inst.graph if inst else None))
    if inst is None:
        raise UsageError("fcn needs an instance file")
    apex = None if args.apex is None else args.apex - 1
    if apex is not None:
        inst.graph.check_vertices([apex])
    rep = fcn_report(inst.graph, apex, args.classes)
    _emit(json.dumps(rep, indent=2) + "\n", args.output)
    print(f"mode={rep['mode']} value={rep['value']}", file=sys.stderr)
    failed = [name for name, ok in rep["checks"].items() if not ok]
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roundbip", description="Round-and-bipartize vertex cover analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run round-and-bipartize and report the ratio certificate")
    a.add_argument("instance", nargs="?", help="instance file, '-' for stdin")
    a.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    a.add_argument("--auto-color", action="store_true", help="choose S from a greedy colouring")
    a.add_argument("--greedy-bipartize", action="store_true", help="grow S until it bipartizes")
    a.add_argument("--brute-max", type=int, default=20, help="largest n solved exactly (default 20)")
    a.add_argument("--verify", metavar="REPORT", help="re-check an existing report instead")
    a.set_defaults(run=cmd_analyze)

    gen = sub.add_parser("generate", help="write a tight instance")
    gen.add_argument("family", choices=["basic", "convex", "lifted", "alpha-rho", "alpha-bip"])
    gen.add_argument("-o", "--output")
    gen.add_argument("--cycle", type=int, default=5, help="basic: odd cycle length")
    gen.add_argument("--apex", type=int, help="basic: the special vertex (default 1)")
    gen.add_argument("--petals", type=int, default=2, help="convex: number of cycles glued at vertex 1")
    gen.add_argument("--len", type=int, default=None, help="cycle length for convex, lifted, alpha-bip")
    gen.add_argument("--indep", default="1,4", help="lifted: independent set, e.g. 1,4")
    gen.add_argument("--alpha", type=_rational)
    gen.add_argument("--rho", type=int)
    gen.add_argument("--seed", type=int, help="convex: random coefficients instead of uniform")
    gen.add_argument("--limit-cycles", type=int, default=64)
    gen.set_defaults(run=cmd_generate)

    f = sub.add_parser("fcn", help="fractional chromatic number certificate")
    f.add_argument("instance", nargs="?")
    f.add_argument("-o", "--output")
    f.add_argument("--apex", type=int, help="vertex whose removal leaves a bipartite graph")
    f.add_argument("--classes", type=_classes, help="3-colouring as '1,4,7;2,5,8;3,6,9'")
    f.add_argument("--verify", metavar="REPORT")
    f.set_defaults(run=cmd_fcn)
    return parser


_DEFAULT_LEN = {"convex": 5, "lifted": 9, "alpha-bip": 5}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; bad parameters map to 3 here
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "family", None) and args.len is None:
        args.len = _DEFAULT_LEN.get(args.family, 5)
    try:
        return args.run(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except errors.RoundBipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE


if __name__ == "__main__":
    sys.exit(main())
