"""Command-line interface: ``nilmult <subcommand> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 resource guard, 3 verification
disagreement.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from .analysis import TripleSpec, check_lemma41, covering_pair_decision
from .errors import NilmultError, ParseError, PipelineDisagreement, ResourceLimitError
from .groups import FgAbelianGroup, PairSpec, parse_group_spec
from .hall import Alphabet, enumerate_basic, parse_bracket
from .lie import expand
from .multiplier import DEFAULT_MAX_DIM, DEFAULT_MAX_TUPLES, MultiplierRequest, pair_multiplier
from .witt import witt

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_DISAGREE = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    max_ambient_dim: int = DEFAULT_MAX_DIM
    max_tuples: int = DEFAULT_MAX_TUPLES
    output_format: str = "text"
    verify: bool = False

    def __post_init__(self):
        if self.max_ambient_dim <= 0 or self.max_tuples <= 0:
            raise ValueError("limits must be positive")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    @property
    def limits(self) -> dict:
        return {"max_dim": self.max_ambient_dim, "max_tuples": self.max_tuples}


_GROUP = {
    "type": "object",
    "required": ["free_rank", "torsion_primary", "invariant_factors"],
    "properties": {
        "free_rank": {"type": "integer", "minimum": 0},
        "torsion_primary": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
}

SCHEMAS = {
    "witt": {
        "type": "object",
        "required": ["n", "d", "value"],
        "properties": {"n": {"type": "integer"}, "d": {"type": "integer"}, "value": {"type": "integer"}},
    },
    "basic-commutators": {
        "type": "object",
        "required": ["alphabet", "weight", "commutators"],
        "properties": {
            "alphabet": {"type": "array", "items": {"type": "string"}},
            "weight": {"type": "integer"},
            "commutators": {"type": "array", "items": {"type": "string"}},
        },
    },
    "expand": {
        "type": "object",
        "required": ["input", "weight", "terms"],
        "properties": {
            "input": {"type": "string"},
            "weight": {"type": "integer"},
            "terms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["commutator", "coefficient"],
                    "properties": {"commutator": {"type": "string"}, "coefficient": {"type": "integer"}},
                },
            },
        },
    },
    "multiplier": {
        **_GROUP,
        "required": _GROUP["required"] + ["pipelines", "c", "N", "K"],
        "properties": {
            **_GROUP["properties"],
            "c": {"type": "integer", "minimum": 1},
            "N": {"type": "string"},
            "K": {"type": "string"},
            "pipelines": {
                "type": "object",
                "required": ["ran", "agree", "results"],
                "properties": {
                    "ran": {"type": "array", "items": {"type": "string"}},
                    "agree": {"type": "boolean"},
                    "results": {"type": "object"},
                },
            },
        },
    },
    "covering-pair": {
        "type": "object",
        "required": ["verdict", "justification", "multiplier", "c", "N", "K"],
        "properties": {
            "verdict": {"enum": ["exists", "not_exists", "unknown_out_of_scope"]},
            "justification": {"type": "string"},
            "multiplier": _GROUP,
        },
    },
    "check-lemma41": {
        "type": "object",
        "required": ["c", "G", "N", "K", "multipliers", "clauses", "passed"],
        "properties": {
            "clauses": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["clause", "relation", "lhs", "rhs", "holds", "skipped"],
                },
            },
            "passed": {"type": "boolean"},
        },
    },
    "grid-verify": {
        "type": "object",
        "required": ["instances", "disagreements", "lemma23_failures", "passed"],
        "properties": {
            "instances": {"type": "integer"},
            "disagreements": {"type": "array"},
            "lemma23_failures": {"type": "array"},
            "passed": {"type": "boolean"},
        },
    },
}
SCHEMAS["schur"] = SCHEMAS["multiplier"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _group_arg(text: str) -> FgAbelianGroup:
    try:
        return parse_group_spec(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-dim", type=_positive, default=None,
                        help=f"bound on the weight-(c+1) layer size (default {DEFAULT_MAX_DIM}, env NILMULT_MAX_DIM)")
    common.add_argument("--max-tuples", type=_positive, default=DEFAULT_MAX_TUPLES)

    pairs = _Parser(add_help=False)
    pairs.add_argument("--N", dest="N", type=_group_arg, help="group spec, e.g. 'Z^2 * Z/4'")
    pairs.add_argument("--K", dest="K", type=_group_arg, help="complement of N (default 1)")
    pairs.add_argument("-c", type=_positive, help="class parameter c >= 1")
    pairs.add_argument("--file", help="JSON input with keys N, K, c")
    pairs.add_argument("--verify", action="store_true", help="also run the lattice oracle")

    parser = _Parser(prog="nilmult", description="Nilpotent multipliers of pairs of abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("witt", parents=[common], help="Witt count chi_n(d)")
    p.add_argument("n", type=_positive)
    p.add_argument("d", type=int)

    p = sub.add_parser("basic-commutators", parents=[common], help="list basic commutators")
    p.add_argument("--alphabet", required=True, help="comma-separated letters, smallest first")
    p.add_argument("--weight", type=_positive, required=True)

    p = sub.add_parser("expand", parents=[common], help="Hall-basis expansion of a bracket")
    p.add_argument("expr")
    p.add_argument("--alphabet", help="comma-separated letters, smallest first (default: sorted)")

    sub.add_parser("multiplier", parents=[common, pairs], help="M^(c)(G,N) for G = N + K")

    p = sub.add_parser("schur", parents=[common], help="Schur multiplier M(G)")
    p.add_argument("--group", type=_group_arg, required=True)
    p.add_argument("--verify", action="store_true")

    sub.add_parser("covering-pair", parents=[common, pairs], help="c-covering pair existence")

    p = sub.add_parser("check-lemma41", parents=[common], help="check the triple relations")
    p.add_argument("--N", dest="N", type=_group_arg, required=True)
    p.add_argument("--summand-split", type=int, required=True,
                   help="K is the first i cyclic summands of N (free summands first)")
    p.add_argument("--K-complement", type=_group_arg, default=FgAbelianGroup())
    p.add_argument("-c", type=_positive, required=True)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("grid-verify", parents=[common], help="three-way agreement on the built-in grid")
    p.add_argument("--max-c", type=int, default=3, choices=(1, 2, 3))
    return parser


def _config(args) -> CliConfig:
    max_dim = args.max_dim
    if max_dim is None:
        env = os.environ.get("NILMULT_MAX_DIM")
        try:
            max_dim = int(env) if env else DEFAULT_MAX_DIM
        except ValueError:
            raise UsageError(f"NILMULT_MAX_DIM must be an integer, got {env!r}") from None
    try:
        return CliConfig(max_dim, args.max_tuples, args.format, getattr(args, "verify", False))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_pair(args) -> tuple[PairSpec, int]:
    N, K, c = args.N, args.K, args.c
    if args.file:
        try:
            with open(args.file) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from None

        def group(value):
            if isinstance(value, str):
                return parse_group_spec(value)
            return FgAbelianGroup.from_json(value)

        N = N or (group(data["N"]) if "N" in data else None)
        K = K or (group(data["K"]) if "K" in data else None)
        c = c or data.get("c")
    if N is None or c is None:
        raise UsageError("need --N and -c (or a --file providing them)")
    return PairSpec(N, K or FgAbelianGroup()), c


def _multiplier_payload(pair, c, config):
    req = MultiplierRequest(pair, c, **config.limits)
    result, report = pair_multiplier(req, config.verify)
    payload = {"c": c, "N": str(pair.N), "K": str(pair.K), **result.to_json(), "pipelines": report}
    agreed = ", ".join(report["ran"])
    text = f"M^({c})(G,N) = {result}\npipelines agreeing: {agreed}"
    return payload, text


def _grid_verify(args, config):
    from .grid import chain_grid
    from .multiplier import closed_form, count_general, lemma23_verify, oracle

    grid = {1: 5, 2: 5, 3: 4}
    grid = {c: k for c, k in grid.items() if c <= args.max_c}
    disagreements, failures = [], []
    count = 0
    for pair, c in chain_grid(grid):
        req = MultiplierRequest(pair, c, **config.limits)
        count += 1
        results = {f.__name__: str(f(req).canonical) for f in (closed_form, count_general, oracle)}
        if len(set(results.values())) != 1:
            disagreements.append({"N": str(pair.N), "K": str(pair.K), "c": c, **results})
        if pair.n and not lemma23_verify(req)[0]:
            failures.append({"N": str(pair.N), "K": str(pair.K), "c": c})
    passed = not disagreements and not failures
    payload = {"instances": count, "disagreements": disagreements,
               "lemma23_failures": failures, "passed": passed}
    text = (f"{count} instances, {len(disagreements)} disagreements, "
            f"{len(failures)} basis failures: {'PASS' if passed else 'FAIL'}")
    return payload, text, (EXIT_OK if passed else EXIT_DISAGREE)


def _dispatch(args, config):
    cmd = args.command
    if cmd == "witt":
        value = witt(args.n, args.d)
        return {"n": args.n, "d": args.d, "value": value}, str(value), EXIT_OK
    if cmd == "basic-commutators":
        letters = [s.strip() for s in args.alphabet.split(",") if s.strip()]
        alphabet = Alphabet(letters)
        trees = enumerate_basic(alphabet, args.weight, max_count=config.max_ambient_dim)
        names = [str(b) for b in trees]
        return {"alphabet": letters, "weight": args.weight, "commutators": names}, "\n".join(names), EXIT_OK
    if cmd == "expand":
        if args.alphabet:
            letters = [s.strip() for s in args.alphabet.split(",") if s.strip()]
        else:
            import re

            letters = sorted(set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", args.expr)))
        tree = parse_bracket(args.expr, Alphabet(letters))
        vec = expand(tree)
        terms = [{"commutator": str(b), "coefficient": k} for b, k in vec.items()]
        return {"input": args.expr, "weight": tree.weight, "terms": terms}, str(vec), EXIT_OK
    if cmd == "multiplier":
        pair, c = _read_pair(args)
        payload, text = _multiplier_payload(pair, c, config)
        return payload, text, EXIT_OK
    if cmd == "schur":
        payload, text = _multiplier_payload(PairSpec(args.group), 1, config)
        return payload, text, EXIT_OK
    if cmd == "covering-pair":
        pair, c = _read_pair(args)
        decision = covering_pair_decision(pair, c, config.verify, **config.limits)
        payload = {"c": c, "N": str(pair.N), "K": str(pair.K), **decision.to_json()}
        text = (f"{decision.verdict} ({decision.justification}); "
                f"M^({c})(G,N) = {decision.multiplier}")
        return payload, text, EXIT_OK
    if cmd == "check-lemma41":
        try:
            triple = TripleSpec.split(args.N, args.summand_split, args.K_complement)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report = check_lemma41(triple, args.c, config.verify, **config.limits)
        lines = [f"G = {report['G']}, N = {report['N']}, K = {report['K']}, c = {report['c']}"]
        for name, value in report["multipliers"].items():
            lines.append(f"  M({name}) = {value}")
        for cl in report["clauses"]:
            status = "skipped" if cl["skipped"] else ("pass" if cl["holds"] else "FAIL")
            lines.append(f"  ({cl['clause']}) {cl['lhs']} {cl['relation']} {cl['rhs']}: {status}")
        return report, "\n".join(lines), (EXIT_OK if report["passed"] else EXIT_DISAGREE)
    if cmd == "grid-verify":
        return _grid_verify(args, config)
    raise UsageError(f"unknown command {cmd}")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        config = _config(args)
        payload, text, code = _dispatch(args, config)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=stderr)
        return EXIT_RESOURCE
    except PipelineDisagreement as exc:
        print(str(exc), file=stderr)
        return EXIT_DISAGREE
    except (NilmultError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if config.output_format == "json":
        print(json.dumps(payload, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
