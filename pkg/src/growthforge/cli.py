"""Command-line entry point: ``growthforge <command> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 domain condition.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .errors import DomainError, GrowthForgeError, InputError, ParseError
from .exact import IntPolynomial
from .groups import GroupSpec, Word, standard_generating_set
from .growth import DEFAULT_BUDGET, enumerate_ball, format_sig, rate_bounds
from .specfile import parse_group_spec, serialize_group_spec
from .spectra import char_poly, kronecker_all_roots_of_unity
from .witness import (
    DEFAULT_VERIFY_DEPTH,
    classify_split_extension,
    free_pair_standard,
    verify_free_semigroup,
    witness_search,
)


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="growthforge", description="Growth of abelian-by-cyclic and matrix groups.")
    parser.add_argument("--version", action="version", version=f"growthforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a machine-readable report")
        return p

    p = common(sub.add_parser("classify", help="polynomial vs uniform exponential growth"))
    p.add_argument("--group", required=True)
    p.add_argument("--verify-depth", type=int, default=DEFAULT_VERIFY_DEPTH)

    p = common(sub.add_parser("growth", help="ball sizes by exhaustive enumeration"))
    p.add_argument("--group", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--csv", dest="csv_out")

    p = common(sub.add_parser("witness", help="free-semigroup witness"))
    p.add_argument("--group", required=True)
    p.add_argument("--gens", help="comma-separated words, optionally 'label=word'")
    p.add_argument("--verify-depth", type=int, default=DEFAULT_VERIFY_DEPTH)

    p = common(sub.add_parser("verify", help="brute-force freeness check of two words"))
    p.add_argument("--group", required=True)
    p.add_argument("--word-a", required=True)
    p.add_argument("--word-b", required=True)
    p.add_argument("--depth", type=int, required=True)

    p = common(sub.add_parser("kronecker", help="are all roots of a monic polynomial roots of unity"))
    p.add_argument("--poly", required=True, help="coefficients, highest degree first, e.g. 1,-3,1")
    return parser


def parse_gens(text: str) -> dict:
    words = {}
    for i, item in enumerate(x.strip() for x in text.split(",")):
        if not item:
            raise ParseError(f"empty generator in --gens {text!r}")
        if "=" in item:
            label, body = (s.strip() for s in item.split("=", 1))
        else:
            label, body = f"s{i + 1}", item
        if label in words:
            raise ParseError(f"duplicate generator label {label!r}")
        words[label] = Word.parse(body)
    return words


def parse_poly(text: str) -> IntPolynomial:
    try:
        coeffs = [int(c) for c in text.split(",")]
    except ValueError:
        raise ParseError(f"bad coefficient list {text!r}") from None
    if not coeffs or coeffs[0] != 1:
        raise ParseError("polynomial must be monic: first coefficient must be 1")
    return IntPolynomial(coeffs)


def _digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\x00")
    return h.hexdigest()


def _strs(xs):
    return [str(x) for x in xs]


def _exact(value):
    """Exact integers become decimal strings, recursively."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {k: _exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_exact(v) for v in value]
    return value


def _uses_standard(spec: GroupSpec) -> bool:
    std = standard_generating_set(spec.group)
    return spec.generators.labels == std.labels and spec.generators.elements == std.elements


def cmd_classify(args):
    spec = parse_group_spec(args.group)
    if spec.kind != "split_extension":
        raise UsageError("classify needs a split_extension spec")
    c = classify_split_extension(spec, args.verify_depth)
    result = {"verdict": c.verdict, "evidence": c.evidence,
              "char_poly": _strs(char_poly(spec.matrix).coeffs)}
    lines = [f"verdict: {c.verdict}", f"char_poly: {char_poly(spec.matrix)}"]
    if c.witness is not None:
        w = c.witness
        result["witness"] = w.to_dict()
        result["lower_bound"] = format_sig(w.rate_lower_bound)
        lines += [f"witness: ({w.word_a}) , ({w.word_b})", f"max_length: {w.max_length}",
                  f"lower_bound: {format_sig(w.rate_lower_bound)}",
                  f"verified_depth: {w.verified_depth}"]
    else:
        lines.append("evidence: every eigenvalue is a root of unity")
    return result, "\n".join(lines), [serialize_group_spec(spec), str(args.verify_depth)]


def cmd_growth(args):
    spec = parse_group_spec(args.group)
    if args.radius < 0 or args.budget < 1:
        raise UsageError("radius must be >= 0 and budget >= 1")
    report = enumerate_ball(spec, None, args.radius, args.budget)
    csv_text = report.to_csv()
    if args.csv_out:
        with open(args.csv_out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    result = {
        "ball_sizes": _strs(report.ball_sizes),
        "nth_root": [None if r is None else format_sig(r) for r in report.nth_root_upper_bounds],
        "elements_visited": str(report.elements_visited),
    }
    if args.radius >= 1:
        result["upper_bound"] = format_sig(rate_bounds(report).upper)
    timings = {"enumeration_seconds": report.wall_time}
    return result, csv_text.rstrip("\n"), [serialize_group_spec(spec), str(args.radius)], timings


def cmd_witness(args):
    spec = parse_group_spec(args.group)
    if spec.kind != "split_extension":
        raise UsageError("witness needs a split_extension spec")
    if args.gens:
        gens = spec.with_words(parse_gens(args.gens))
        w = witness_search(spec, gens, args.verify_depth)
    elif _uses_standard(spec):
        gens = spec.generators
        w = free_pair_standard(spec, args.verify_depth)
    else:
        gens = spec.generators
        w = witness_search(spec, gens, args.verify_depth)
    result = w.to_dict()
    ea, eb = w.expanded()
    result["expanded"] = [str(ea), str(eb)]
    result["generators"] = {l: (str(d) if d is not None else None) for l, d in
                            zip(gens.labels, gens.definitions or [None] * len(gens))}
    lines = [f"word_a: {w.word_a}", f"word_b: {w.word_b}", f"max_length: {w.max_length}",
             f"lower_bound: {format_sig(w.rate_lower_bound)}",
             f"verified_depth: {w.verified_depth}",
             f"trace: {json.dumps(w.trace, sort_keys=True)}"]
    if (ea, eb) != (w.word_a, w.word_b):
        lines.insert(2, f"expanded: ({ea}) , ({eb})")
    return result, "\n".join(lines), [serialize_group_spec(spec), args.gens or "",
                                      str(args.verify_depth)]


def cmd_verify(args):
    spec = parse_group_spec(args.group)
    res = verify_free_semigroup(spec, Word.parse(args.word_a), Word.parse(args.word_b), args.depth)
    result = {"ok": res.ok, "distinct_count": str(res.distinct_count)}
    if res.ok:
        text = f"ok: {res.distinct_count} distinct elements"
    else:
        result["counterexample"] = list(res.counterexample)
        text = f"counterexample: {res.counterexample[0]} = {res.counterexample[1]}"
    return result, text, [serialize_group_spec(spec), args.word_a, args.word_b, str(args.depth)]


def cmd_kronecker(args):
    p = parse_poly(args.poly)
    value = kronecker_all_roots_of_unity(p)
    return {"all_roots_of_unity": value, "poly": _strs(p.coeffs)}, str(value).lower(), [args.poly]


COMMANDS = {
    "classify": cmd_classify,
    "growth": cmd_growth,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "kronecker": cmd_kronecker,
}


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        start = time.perf_counter()
        out = COMMANDS[args.command](args)
        result, text, digest_parts = out[:3]
        timings = out[3] if len(out) > 3 else {}
        timings["total_seconds"] = time.perf_counter() - start
    except DomainError as exc:
        print(f"error: {exc.tag}: {exc}", file=stderr)
        return 2
    except GrowthForgeError as exc:
        print(f"error: {exc.tag}: {exc}", file=stderr)
        return 1
    except OSError as exc:
        print(f"error: IOError: {exc}", file=stderr)
        return 1
    if args.json:
        report = {
            "command": args.command,
            "tool_version": __version__,
            "inputs_digest": _digest(args.command, *digest_parts),
            "result": _exact(result),
            "timings": timings,
        }
        print(json.dumps(report, sort_keys=True, indent=2), file=stdout)
    else:
        print(text, file=stdout)
    return 0


def main(argv=None):
    try:
        code = run_command(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        # --help / --version
        code = exc.code if isinstance(exc.code, int) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
