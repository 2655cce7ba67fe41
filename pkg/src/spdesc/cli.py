"""Command-line front end.

Subcommands: ``describe`` synthesizes a description from an obstruction
file; ``verify`` checks a description against direct enumeration;
``member`` answers one ideal membership query; ``enumerate`` lists
canonical terms; ``show`` pretty-prints a description document.  All
configuration is via flags, so identical invocations produce identical
output.  Exit codes: 0 success (and verification equal), 1 verification
mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bits import (
    DocumentFormatError,
    R,
    UnknownIdealKeyError,
    from_json,
    rank,
    to_dot,
    to_json,
)
from .ideals import load_obstruction_file, make_ideal, member
from .oracle import SizeGuardError, verify_equivalence
from .synth import DEFAULT_MAX_BLOCK, SynthesisError, synthesize
from .terms import ResourceLimitError, TermParseError, enumerate_sp, parse_term


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spdesc",
        description=(
            "Synthesize and check recursive structural descriptions of"
            " suborder-closed classes of series-parallel posets."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="synthesize a description from an obstruction file")
    p.add_argument("file", help="obstruction file, one term per line, '#' comments")
    p.add_argument("--out", help="write the JSON document here instead of stdout")
    p.add_argument("--dot", help="also write a Graphviz view of the entry graph")
    p.add_argument("--prune", action="store_true", help="drop dominated bits")
    p.add_argument(
        "--max-block",
        type=int,
        default=DEFAULT_MAX_BLOCK,
        help="cap on components per forbidden antichain sum (default %(default)s)",
    )

    p = sub.add_parser("verify", help="check a description against direct enumeration")
    p.add_argument("file", help="obstruction file")
    p.add_argument("--max-size", type=int, required=True, help="verification size bound")
    p.add_argument("--doc", help="verify this JSON document instead of synthesizing")
    p.add_argument("--prune", action="store_true", help="drop dominated bits")
    p.add_argument("--max-block", type=int, default=DEFAULT_MAX_BLOCK)

    p = sub.add_parser("member", help="decide membership of a term in the ideal")
    p.add_argument("file", help="obstruction file")
    p.add_argument("term", help="term to test, in the term grammar")

    p = sub.add_parser("enumerate", help="list canonical terms up to a size")
    p.add_argument("--max-size", type=int, required=True)

    p = sub.add_parser("show", help="pretty-print a description document")
    p.add_argument("doc", help="JSON document written by describe")
    return parser


def _cmd_describe(args) -> int:
    terms = load_obstruction_file(args.file)
    desc = synthesize(terms, max_block=args.max_block, prune=args.prune)
    text = to_json(desc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(desc))
    return 0


def _cmd_verify(args) -> int:
    terms = load_obstruction_file(args.file)
    if args.doc:
        with open(args.doc, "r", encoding="utf-8") as fh:
            desc = from_json(fh.read())
    else:
        desc = synthesize(terms, max_block=args.max_block, prune=args.prune)
    report = verify_equivalence(terms, desc, args.max_size)
    for witness in report.missing:
        print(f"missing {witness}")
    for witness in report.extra:
        print(f"extra {witness}")
    print(report.summary())
    return 0 if report.equal else 1


def _cmd_member(args) -> int:
    ideal = make_ideal(load_obstruction_file(args.file))
    term = parse_term(args.term)
    print("true" if member(ideal, term) else "false")
    return 0


def _cmd_enumerate(args) -> int:
    for t in enumerate_sp(args.max_size):
        print(t.text)
    return 0


def _cmd_show(args) -> int:
    with open(args.doc, "r", encoding="utf-8") as fh:
        desc = from_json(fh.read())
    print(f"root {desc.root}")
    for key in sorted(desc.entries):
        entry = desc.entries[key]
        print(f"entry {key}  (rank {rank(desc, key)})")
        for bit in entry.bits:
            first = "R" if bit.first is R else bit.first.key
            second = "R" if bit.second is R else bit.second.key
            print(f"  {bit.shape}: {first} | {second}")
    return 0


_COMMANDS = {
    "describe": _cmd_describe,
    "verify": _cmd_verify,
    "member": _cmd_member,
    "enumerate": _cmd_enumerate,
    "show": _cmd_show,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (
        TermParseError,
        SynthesisError,
        DocumentFormatError,
        UnknownIdealKeyError,
        SizeGuardError,
        ResourceLimitError,
        OSError,
        ValueError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
