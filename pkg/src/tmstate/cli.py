"""``tmstate`` command line: build, complexity, decide, verify."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Sequence

from tmstate import automata
from tmstate.automata import AutomatonError, Dfa
from tmstate.classes import build_minimal, complement_minimal, state_complexity
from tmstate.construction import (
    build_a_mrb,
    build_a_t,
    build_pi_a_mrb,
    build_product,
    build_projected,
)
from tmstate.decision import decide
from tmstate.numeration import derive_params
from tmstate.oracle import OverflowGuard, sweep

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

# stage -> (builder(m, r, p), reads digit pairs)
STAGES: dict[str, tuple[Callable[[int, int, int], Dfa], bool]] = {
    "a_t": (lambda m, r, p: build_a_t(p), True),
    "a_mrb": (lambda m, r, p: build_a_mrb(m, r, 1 << p), True),
    "pi_a_mrb": (lambda m, r, p: build_pi_a_mrb(m, r, 1 << p), False),
    "product": (build_product, True),
    "projected": (build_projected, False),
    "minimal": (build_minimal, False),
}


def _err(msg: str) -> None:
    print(f"tmstate: {msg}", file=sys.stderr)


def _emit(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _err(f"cannot write {out}: {exc}")
        return EXIT_IO
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    builder, pairs = STAGES[args.stage]
    try:
        derive_params(args.m, args.r, args.p)
        if args.complement:
            if args.stage != "minimal":
                raise ValueError("--complement applies to the minimal stage only")
            a = complement_minimal(args.m, args.r, args.p)
        else:
            a = builder(args.m, args.r, args.p)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    if args.format == "dot":
        name = f"{args.stage}_{args.m}_{args.r}_{args.p}"
        text = automata.to_dot(a, pair_base=(1 << args.p) if pairs else None, name=name)
    else:
        text = automata.to_json(a) + "\n"
    return _emit(text, args.out)


def cmd_complexity(args: argparse.Namespace) -> int:
    if args.m_max < 1 or args.p_max < 1:
        _err("--m-max and --p-max must be >= 1")
        return EXIT_USAGE
    lines = ["m\tp\tformula\thopcroft\tagree"]
    bad = 0
    for p in range(1, args.p_max + 1):
        for m in range(1, args.m_max + 1):
            formula = state_complexity(m, p)
            counted = automata.minimize(build_projected(m, 0, p)).state_count
            agree = formula == counted
            bad += not agree
            lines.append(f"{m}\t{p}\t{formula}\t{counted}\t{'yes' if agree else 'NO'}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_FAIL if bad else EXIT_OK


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_decide(args: argparse.Namespace) -> int:
    try:
        text = _read_input(args.input)
    except OSError as exc:
        _err(f"cannot read {args.input}: {exc}")
        return EXIT_IO
    try:
        a = automata.from_json(text)
    except AutomatonError as exc:
        _err(f"malformed automaton: {exc}")
        return EXIT_USAGE
    size = a.alphabet_size
    p = args.p
    if p is None:
        if size < 2 or size & (size - 1):
            _err(f"alphabet size {size} is not a power of two >= 2")
            return EXIT_USAGE
        p = size.bit_length() - 1
    if p < 1 or size != 1 << p:
        _err(f"alphabet size {size} does not match p={p}")
        return EXIT_USAGE
    verdict = decide(a, p, allow_complement=args.allow_complement)
    print(verdict.to_json())
    return EXIT_OK if verdict.match else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        report = sweep(args.m, args.r, args.p, args.max_len, complement=args.complement)
    except OverflowGuard as exc:
        _err(str(exc))
        return EXIT_USAGE
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    print(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def _instance_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--m", type=int, required=True, help="modulus m >= 1")
    sp.add_argument("--r", type=int, required=True, help="remainder, 0 <= r < m")
    sp.add_argument("--p", type=int, required=True, help="base is 2**p")
    sp.add_argument("--complement", action="store_true", help="use m*odious + r instead")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmstate", description="Minimal automata for m*T + r in base 2^p."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="write one construction stage as JSON or DOT")
    _instance_flags(sp)
    sp.add_argument("--stage", choices=sorted(STAGES), default="minimal")
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.add_argument("--out", help="output path (stdout when omitted)")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("complexity", help="formula vs Hopcroft state counts, TSV")
    sp.add_argument("--m-max", type=int, default=64)
    sp.add_argument("--p-max", type=int, default=3)
    sp.set_defaults(func=cmd_complexity)

    sp = sub.add_parser("decide", help="does a JSON automaton recognize some m*T + r?")
    sp.add_argument("--input", default="-", help="JSON automaton path, '-' for stdin")
    sp.add_argument("--p", type=int, help="base exponent (default: from the alphabet)")
    sp.add_argument("--allow-complement", action="store_true")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("verify", help="sweep the minimal automaton against arithmetic")
    _instance_flags(sp)
    sp.add_argument("--max-len", type=int, default=6)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
