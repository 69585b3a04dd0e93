"""Command-line interface: ``tightcm <command> ...``, JSON on stdout.

Exit status 0 on success, 1 on invalid input (error JSON on stderr) and 2
when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import oracle
from .classify import decompose, enumerate_decomposables, pair_pattern, failing_pair
from .cmmod import RankTwoSpec, build_rank1, build_rank2, verify_relations
from .combinat import Rim, interlacing
from .errors import BadParameters, CMError, InvariantViolation
from .render import emit, layout_decomposition, layout_profile, layout_rim
from .series import DEFAULT_TRUNCATION, SeriesRing
from .serialize import (
    interlacing_to_json,
    rep_to_json,
    result_to_json,
    rim_to_json,
    series_to_json,
    spec_from_json,
)

ENV_TRUNCATION = "CM_TRUNCATION"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_truncation() -> int:
    raw = os.environ.get(ENV_TRUNCATION)
    if raw is None or raw == "":
        return DEFAULT_TRUNCATION
    try:
        value = int(raw)
    except ValueError:
        raise BadParameters(f"{ENV_TRUNCATION}={raw!r} is not an integer") from None
    if value < 2:
        raise BadParameters(f"{ENV_TRUNCATION} must be at least 2")
    return value


def parse_labels(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise BadParameters(f"labels must be comma-separated integers, got {text!r}") from None


def _rim(args, which: str) -> Rim:
    labels = getattr(args, which)
    if labels is None:
        raise BadParameters(f"--{which} is required")
    if args.n is None:
        raise BadParameters("--n is required")
    return Rim(args.n, parse_labels(labels))


def load_spec(path: str, truncation: Optional[int]) -> RankTwoSpec:
    """Read a spec file ('-' for stdin).  Truncation: flag, then file, then environment."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise BadParameters(f"cannot read spec {path!r}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParameters(f"spec {path!r} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise BadParameters("spec must be a JSON object")
    if truncation is None and "truncation" not in data:
        truncation = default_truncation()
    return spec_from_json(data, truncation)


def _need_spec(args) -> RankTwoSpec:
    if args.spec is None:
        raise BadParameters("--spec is required")
    return load_spec(args.spec, args.truncation)


# -- commands -------------------------------------------------------------------

def cmd_interlace(args) -> dict:
    return interlacing_to_json(interlacing(_rim(args, "I"), _rim(args, "J")))


def cmd_construct(args) -> dict:
    M = build_rank2(_need_spec(args))
    ok = verify_relations(M)
    if not ok:
        raise InvariantViolation("constructed module violates the defining relations")
    return {"representation": rep_to_json(M), "relations_hold": ok}


def cmd_classify(args) -> dict:
    spec = _need_spec(args)
    pattern = pair_pattern(spec)
    fp = failing_pair(pattern)
    return {"verdict": "indecomposable" if fp else "split", "S": list(pattern.S),
            "failing_pair": list(fp) if fp else None}


def cmd_decompose(args) -> dict:
    return result_to_json(decompose(_need_spec(args)), with_witness=args.with_witness)


def cmd_enumerate(args) -> dict:
    I, J = _rim(args, "I"), _rim(args, "J")
    ring = SeriesRing(args.truncation or default_truncation())
    cases = enumerate_decomposables(I, J, ring)
    return {
        "I": rim_to_json(I), "J": rim_to_json(J), "r": interlacing(I, J).r,
        "count": len(cases),
        "entries": [{"peaks": sorted(c.peaks.members), "divisible": list(c.pattern),
                     "b": [series_to_json(s) for s in c.b],
                     "X": rim_to_json(c.X), "Y": rim_to_json(c.Y)} for c in cases],
    }


def oracle_report(spec: RankTwoSpec) -> dict:
    """Theorem verdict next to the exhaustive oracle verdict."""
    theorem = decompose(spec)
    M = build_rank2(spec)
    found = oracle.decompose_exhaustive(M)
    ring = spec.ring
    dims = {}
    for X in found:
        LX = build_rank1(X, ring)
        dims[str(X)] = {"hom_into_M": oracle.hom_space(LX, M).dimension,
                        "hom_from_M": oracle.hom_space(M, LX).dimension}
    agree = set(found) == set(theorem.summands())
    return {
        "theorem": result_to_json(theorem, with_witness=False),
        "oracle": {"verdict": "split" if found else "indecomposable",
                   "candidates": [rim_to_json(X) for X in found], "dimensions": dims},
        "agree": agree,
    }


def cmd_oracle_check(args) -> dict:
    return oracle_report(_need_spec(args))


def cmd_render(args) -> Optional[dict]:
    if args.spec is not None:
        spec = load_spec(args.spec, args.truncation)
        result = decompose(spec)
        layouts = (layout_decomposition(spec.I, spec.J, result.X, result.Y) if result.is_split
                   else (layout_profile(spec.I, spec.J),))
    elif args.J is not None:
        layouts = (layout_profile(_rim(args, "I"), _rim(args, "J")),)
    else:
        layouts = (layout_rim(_rim(args, "I")),)
    text = emit(layouts, args.format)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise BadParameters(f"cannot write {args.out!r}: {exc.strerror}") from None
        return {"written": args.out, "format": args.format}
    sys.stdout.write(text)
    return None


COMMANDS = {
    "interlace": (cmd_interlace, "interlacing degree and tightness of I, J"),
    "construct": (cmd_construct, "quiver representation of M(I, J) and a relation check"),
    "classify": (cmd_classify, "indecomposable or split, from the pair sums"),
    "decompose": (cmd_decompose, "summands L_X + L_Y, optionally with the witness"),
    "enumerate": (cmd_enumerate, "one decomposable extension per peak subset pair"),
    "oracle-check": (cmd_oracle_check, "compare the classification with brute force"),
    "render": (cmd_render, "lattice diagram as ASCII or SVG"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tightcm", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--truncation", type=int, default=None,
                        help=f"truncation order N (default: ${ENV_TRUNCATION} or {DEFAULT_TRUNCATION})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common])
        if name in ("interlace", "enumerate", "render"):
            p.add_argument("--I", help="comma-separated labels of I")
            p.add_argument("--J", help="comma-separated labels of J")
            p.add_argument("--n", type=int, help="size of the cycle")
        if name not in ("interlace", "enumerate"):
            p.add_argument("--spec", help="spec JSON file, or - for stdin")
        if name == "decompose":
            p.add_argument("--with-witness", action="store_true",
                           help="include idempotents and eigenvectors")
        if name == "render":
            p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
            p.add_argument("--out", help="write the figure here instead of stdout")
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.truncation is not None and args.truncation < 2:
            raise BadParameters("--truncation must be at least 2")
        payload = COMMANDS[args.command][0](args)
    except UsageError as exc:
        return _fail("UsageError", str(exc), 1)
    except CMError as exc:
        return _fail(type(exc).__name__, str(exc), 1)
    except InvariantViolation as exc:
        return _fail("InvariantViolation", str(exc), 2)
    if payload is not None:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
