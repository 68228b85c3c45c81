"""Command-line interface.

Subcommands: analyze (cycle type / signature of a gate), decide (parity
verdict), synth (search for a CNOT word), group (census of the generated
group), export (permutation matrix).  Results go to stdout, diagnostics to
stderr.  Exit codes are a total function of the result variant:

    0  success / no parity obstruction / word found
    1  proven impossible (parity) or unreachable (exhaustion)
    2  search stopped by a depth or element cap, inconclusive
    3  group larger than the element cap
    64 usage error
    65 cost guard exceeded
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from cnotswap import __version__
from .feasibility import PARITY_DIMENSION_LIMIT, Verdict, decide
from .gates import GateKind, gate_perm, swap_perm
from .perm import CostGuardError
from .synthesis import (
    DEFAULT_MAX_DIMENSION,
    DEFAULT_MAX_ELEMENTS,
    GroupCensus,
    SearchOutcome,
    bidirectional_find,
    census_payload,
    enumerate_group,
    find_word,
)

EXIT_OK = 0
EXIT_IMPOSSIBLE = 1
EXIT_DEPTH_LIMIT = 2
EXIT_TOO_LARGE = 3
EXIT_USAGE = 64
EXIT_GUARD = 65

ANALYZE_DIMENSION_LIMIT = PARITY_DIMENSION_LIMIT
MATRIX_DIMENSION_LIMIT = 64  # d*d rows of d*d entries beyond this is unhelpful


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="cnotswap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--d", type=_positive_int, required=True, help="qudit dimension")
        p.add_argument("--json", action="store_true", help="machine-readable report")

    p_analyze = sub.add_parser("analyze", help="cycle type, signature, fixed points of a gate")
    common(p_analyze)
    p_analyze.add_argument("--gate", choices=[k.value for k in GateKind], required=True)
    p_analyze.add_argument("--matrix", action="store_true", help="include the permutation matrix")

    p_decide = sub.add_parser("decide", help="parity verdict for building SWAP from CNOTs")
    common(p_decide)

    p_synth = sub.add_parser("synth", help="search for a shortest CNOT word for a target")
    common(p_synth)
    p_synth.add_argument("--target", choices=["swap"], default="swap")
    p_synth.add_argument("--max-depth", type=_nonnegative_int, default=None)
    p_synth.add_argument("--bidirectional", action="store_true",
                         help="meet-in-the-middle search (same results)")
    p_synth.add_argument("--max-elements", type=_positive_int, default=DEFAULT_MAX_ELEMENTS)
    p_synth.add_argument("--max-dimension", type=_positive_int, default=DEFAULT_MAX_DIMENSION)
    p_synth.add_argument("--workers", type=_positive_int, default=1)

    p_group = sub.add_parser("group", help="enumerate the generated group")
    common(p_group)
    p_group.add_argument("--max-elements", type=_positive_int, default=DEFAULT_MAX_ELEMENTS)
    p_group.add_argument("--max-dimension", type=_positive_int, default=DEFAULT_MAX_DIMENSION)
    p_group.add_argument("--workers", type=_positive_int, default=1)
    p_group.add_argument("--cache-dir", default=None)

    p_export = sub.add_parser("export", help="print a gate's permutation matrix")
    common(p_export)
    p_export.add_argument("--gate", choices=[k.value for k in GateKind], required=True)
    p_export.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")

    return parser


def _print_report(args, command: str, params: dict, result: dict, human: list[str]) -> None:
    if args.json:
        report = {
            "command": command,
            "params": params,
            "result": result,
            "version": __version__,
        }
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in human:
            print(line)


def _cycle_type_text(ct) -> str:
    return "(" + ",".join(str(v) for v in ct) + ")"


def _sig_text(sig: int) -> str:
    return f"{sig:+d}"


def _run_analyze(args) -> int:
    if args.d > ANALYZE_DIMENSION_LIMIT:
        raise CostGuardError(
            f"analyze guard: d = {args.d} exceeds {ANALYZE_DIMENSION_LIMIT}"
        )
    if args.matrix and args.d > MATRIX_DIMENSION_LIMIT:
        raise CostGuardError(
            f"matrix guard: d = {args.d} exceeds {MATRIX_DIMENSION_LIMIT}"
        )
    kind = GateKind(args.gate)
    perm = gate_perm(kind, args.d)
    ct = perm.cycle_type()
    sig = perm.signature()
    fixed = len(perm.fixed_points())
    matrix = perm.to_matrix() if args.matrix else None
    result = {
        "gate": kind.value,
        "d": args.d,
        "cycle_type": list(ct),
        "signature": sig,
        "fixed_points": fixed,
        "matrix": matrix.json_payload() if matrix else None,
    }
    human = [
        f"gate: {kind.value}",
        f"d: {args.d}",
        f"cycle type: {_cycle_type_text(ct)}",
        f"signature: {_sig_text(sig)}",
        f"fixed points: {fixed}",
    ]
    if matrix:
        human.append(matrix.pretty())
    _print_report(args, "analyze", {"d": args.d, "gate": kind.value, "matrix": args.matrix},
                  result, human)
    return EXIT_OK


def _run_decide(args) -> int:
    decision = decide(args.d)
    rep = decision.report
    result = {
        "verdict": decision.verdict.value,
        "report": {
            "d": rep.d,
            "sig_cnot1": rep.sig_cnot1,
            "sig_cnot2": rep.sig_cnot2,
            "sig_swap": rep.sig_swap,
            "d_mod_4": rep.d_mod_4,
        },
    }
    human = [
        f"d: {rep.d} (d mod 4 = {rep.d_mod_4})",
        "signatures: cnot1 {}, cnot2 {}, swap {}".format(
            _sig_text(rep.sig_cnot1), _sig_text(rep.sig_cnot2), _sig_text(rep.sig_swap)
        ),
        f"verdict: {decision.verdict.value}",
    ]
    _print_report(args, "decide", {"d": args.d}, result, human)
    return EXIT_IMPOSSIBLE if decision.verdict is Verdict.INFEASIBLE_BY_PARITY else EXIT_OK


def _run_synth(args) -> int:
    target = swap_perm(args.d)
    search_kwargs = dict(
        max_elements=args.max_elements,
        workers=args.workers,
        max_dimension=args.max_dimension,
    )
    if args.bidirectional:
        result = bidirectional_find(args.d, target, max_total_depth=args.max_depth,
                                    **search_kwargs)
    else:
        result = find_word(args.d, target, max_depth=args.max_depth, **search_kwargs)

    # worker count is an execution knob that cannot change results, so it
    # is deliberately absent from the report: runs stay byte-comparable
    params = {
        "d": args.d,
        "target": args.target,
        "max_depth": args.max_depth,
        "bidirectional": args.bidirectional,
        "max_elements": args.max_elements,
        "max_dimension": args.max_dimension,
    }
    if result.outcome is SearchOutcome.FOUND:
        word_names = [letter.name for letter in result.word.letters]
        payload = {"outcome": result.outcome.value, "length": len(word_names),
                   "word": word_names}
        human = [
            f"FOUND: length {len(word_names)}",
            "word: " + (" ".join(word_names) if word_names else "(empty)"),
        ]
        code = EXIT_OK
    elif result.outcome is SearchOutcome.UNREACHABLE_EXHAUSTED:
        payload = {"outcome": result.outcome.value, "group_order": result.group_order,
                   "diameter": result.diameter}
        human = [
            f"UNREACHABLE_EXHAUSTED: group order {result.group_order}, "
            f"diameter {result.diameter}"
        ]
        code = EXIT_IMPOSSIBLE
    else:
        payload = {"outcome": result.outcome.value, "explored_depth": result.explored_depth,
                   "frontier_size": result.frontier_size}
        human = [
            f"DEPTH_LIMIT: explored depth {result.explored_depth}, "
            f"frontier size {result.frontier_size}"
        ]
        code = EXIT_DEPTH_LIMIT
    _print_report(args, "synth", params, payload, human)
    return code


def _run_group(args) -> int:
    result = enumerate_group(
        args.d,
        max_elements=args.max_elements,
        workers=args.workers,
        cache_dir=args.cache_dir,
        max_dimension=args.max_dimension,
    )
    params = {
        "d": args.d,
        "max_elements": args.max_elements,
        "max_dimension": args.max_dimension,
        "cache_dir": args.cache_dir,
    }
    if isinstance(result, GroupCensus):
        payload = {"outcome": "census", **census_payload(result)}
        human = [
            f"d: {result.d}",
            f"order: {result.order}",
            f"diameter: {result.diameter}",
            "counts by depth: " + " ".join(str(c) for c in result.counts_by_depth),
        ]
        code = EXIT_OK
    else:
        payload = {
            "outcome": "too_large",
            "d": result.d,
            "max_elements": result.max_elements,
            "elements_found": result.elements_found,
        }
        human = [
            f"group too large: more than {result.max_elements} elements at d = {result.d} "
            f"({result.elements_found} found before stopping)"
        ]
        code = EXIT_TOO_LARGE
    _print_report(args, "group", params, payload, human)
    return code


def _run_export(args) -> int:
    if args.d > MATRIX_DIMENSION_LIMIT:
        raise CostGuardError(
            f"matrix guard: d = {args.d} exceeds {MATRIX_DIMENSION_LIMIT}"
        )
    kind = GateKind(args.gate)
    matrix = gate_perm(kind, args.d).to_matrix()
    if args.json:
        result = {"gate": kind.value, "d": args.d, "format": args.format,
                  "matrix": matrix.json_payload()}
        _print_report(args, "export",
                      {"d": args.d, "gate": kind.value, "format": args.format},
                      result, [])
        return EXIT_OK
    if args.format == "pretty":
        print(matrix.pretty())
    elif args.format == "csv":
        print(matrix.csv())
    else:
        print(json.dumps(matrix.json_payload(), indent=2, sort_keys=True))
    return EXIT_OK


_HANDLERS = {
    "analyze": _run_analyze,
    "decide": _run_decide,
    "synth": _run_synth,
    "group": _run_group,
    "export": _run_export,
}


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.error("a command is required")
    try:
        return _HANDLERS[args.command](args)
    except CostGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
