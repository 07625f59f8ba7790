"""Command-line front end.

Reports go to stdout as JSON and are byte-identical across reruns with the
same inputs (``--threads`` included).  A one-line human summary and the run
manifest, which carries wall time, go to stderr; ``--manifest PATH`` also
writes the manifest to a file.

Exit status: 0 success; 1 a check found violations, a term is not orderly,
or a search found no witness; 2 a user error (bad input, parse failure,
coverage overrun).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time

from . import __version__
from ._json import from_jsonable, to_jsonable
from .algebras import algebra_from_json, reduce_sequence
from .colorings import Component, Residue, coloring_from_json
from .errors import OrderlyError
from .formats import view_from_json
from .orderly import Induced, check_congruence, check_prehomogeneous, is_orderly_semigroup
from .reports import Bounds
from .search import (
    SearchConfig,
    check_injectivity,
    find_constant_reduction,
    find_tuple_homogeneous,
    verify_one_to_one_obstruction,
)
from .sharp import (
    check_claim_1010a,
    check_theorem_0107b,
    sharp_pair_witness,
    sharp_split,
    sharp_witness_transform,
)
from .terms import AdmissiblePrefix, Signature, enumerate_orderly_terms, parse_term, variables_of

_RANGE = re.compile(r"(\d+)\.\.(\d+)")


class UserError(Exception):
    pass


class _Inputs:
    """Loads file-or-inline arguments and records a digest of each."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def load(self, name: str, arg: str):
        if arg is None:
            return None
        if os.path.isfile(arg):
            with open(arg, "rb") as fh:
                raw = fh.read()
            self.digests[name] = hashlib.sha256(raw).hexdigest()
            text = raw.decode()
        else:
            self.digests[name] = hashlib.sha256(arg.encode()).hexdigest()
            text = arg
        m = _RANGE.fullmatch(text.strip())
        if m:
            return list(range(int(m.group(1)), int(m.group(2)) + 1))
        try:
            return json.loads(text)
        except json.JSONDecodeError:
            # bare built-in names such as nat-add
            if re.fullmatch(r"[A-Za-z][\w:.-]*", text.strip()):
                return text.strip()
            raise UserError(f"{name}: not a file, JSON, or range: {arg!r}") from None


def _signature(inputs, args) -> Signature:
    data = inputs.load("signature", args.signature)
    return Signature.binary() if data is None else Signature.from_json(data)


def _view(inputs, args):
    if args.view is not None:
        return view_from_json(inputs.load("view", args.view))
    if args.algebra is None or args.assignment is None:
        raise UserError("give --view, or both --algebra and --assignment")
    alg = algebra_from_json(inputs.load("algebra", args.algebra))
    return Induced(alg, from_jsonable(list(inputs.load("assignment", args.assignment))))


def _witness(inputs, name, arg, sig):
    if arg is None:
        raise UserError(f"--{name} is required")
    return AdmissiblePrefix.from_json(inputs.load(name, arg), sig)


def _coloring(inputs, args):
    if args.coloring is not None:
        col = coloring_from_json(inputs.load("coloring", args.coloring))
    elif args.mod is not None:
        col = Residue(args.mod, args.accept or [0])
    else:
        raise UserError("give --coloring or --mod/--accept")
    if getattr(args, "component", None) is not None:
        col = Component(col, args.component)
    return col


def _bounds(args) -> Bounds:
    return Bounds(args.max_size, args.max_index)


def _config(args) -> SearchConfig:
    return SearchConfig(
        k=args.k,
        max_size=args.max_size,
        max_index=args.max_index,
        fr_size=args.fr_size,
        time_budget_ms=args.time_budget_ms,
        threads=args.threads,
    )


def cmd_validate(inputs, args):
    sig = _signature(inputs, args)
    t = parse_term(args.term, sig)
    report = {"term": t.text, "orderly": t.orderly, "variables": list(variables_of(t))}
    summary = f"{t.text}: {'orderly' if t.orderly else 'not orderly'}"
    return report, (0 if t.orderly else 1), summary


def cmd_enumerate(inputs, args):
    sig = _signature(inputs, args)
    terms = enumerate_orderly_terms(sig, args.max_size, args.max_index)
    report = {"bounds": _bounds(args).to_json(), "count": len(terms), "terms": [t.text for t in terms]}
    return report, 0, f"{len(terms)} orderly terms"


def cmd_reduce(inputs, args):
    alg = algebra_from_json(inputs.load("algebra", args.algebra))
    a = from_jsonable(list(inputs.load("assignment", args.assignment)))
    view = Induced(alg, a)
    w = _witness(inputs, "witness", args.witness, alg.signature)
    b = reduce_sequence(alg, view.assignment, w)
    report = {
        "algebra": alg.describe(),
        "assignment": list(view.assignment),
        "witness": w.to_json()["terms"],
        "reduced": list(b),
    }
    return report, 0, f"reduced {len(a)} entries to {len(b)}"


def cmd_search(inputs, args):
    view = _view(inputs, args)
    cfg = _config(args)
    if args.kind == "constant":
        result = find_constant_reduction(view, cfg)
    else:
        n = 1 if args.kind == "hindman" else args.n
        result = find_tuple_homogeneous(view, _coloring(inputs, args), n, cfg)
    out = result.to_json()
    summary = result.outcome
    if result.found:
        summary += f": witness {result.witness!r}" + (f" ({result.side})" if result.side else "")
    return out, (0 if result.found else 1), summary


def cmd_sharp(inputs, args):
    sig = _signature(inputs, args)
    if args.action == "split":
        if not args.term:
            raise UserError("sharp split needs a term")
        t = parse_term(args.term, sig)
        pair = sharp_split(t, sig)
        report = {"term": t.text, "x": pair.x.text, "y": pair.y.text}
        return report, 0, f"{t.text} -> ({pair.x.text}, {pair.y.text})"
    w = _witness(inputs, "witness", args.witness, sig)
    out = sharp_witness_transform(w, sig) if args.action == "transform" else sharp_pair_witness(w, sig)
    report = {"witness": w.to_json()["terms"], "result": out.to_json()["terms"]}
    return report, 0, f"{args.action}: {out!r}"


def cmd_check(inputs, args):
    name = args.name
    if name == "thm-0107b":
        inner = algebra_from_json(inputs.load("algebra", args.algebra))
        pairs = from_jsonable(list(inputs.load("pairs", args.pairs)))
        report = check_theorem_0107b(inner, pairs, _bounds(args))
    elif name == "obstruction":
        report = verify_one_to_one_obstruction(_view(inputs, args), _config(args), args.symbol)
    else:
        view = _view(inputs, args)
        bounds = _bounds(args)
        if name == "congruence":
            report = check_congruence(view, bounds)
        elif name == "semigroup":
            report = is_orderly_semigroup(view, bounds)
        elif name == "prehomogeneous":
            report = check_prehomogeneous(view, _coloring(inputs, args), bounds)
        elif name == "injectivity":
            report = check_injectivity(view, bounds)
        else:
            sig = view.signature
            t = _witness(inputs, "t", args.t, sig)
            u = _witness(inputs, "u", args.u, sig)
            report = check_claim_1010a(view, t, u, bounds, d_base=view if args.d_from_base else None)
    out = report.to_json()
    summary = f"{name}: {report.checked} checked, {report.violation_count} violations"
    return out, (0 if report.ok else 1), summary


def _add_view_args(p):
    p.add_argument("--view", help="view descriptor (file or inline JSON)")
    p.add_argument("--algebra", help="algebra: built-in name, table JSON, or file")
    p.add_argument("--assignment", help="assignment prefix: JSON list, a..b range, or file")


def _add_coloring_args(p):
    p.add_argument("--coloring", help="coloring JSON (file or inline)")
    p.add_argument("--mod", type=int, help="residue coloring modulus")
    p.add_argument("--accept", type=int, nargs="+", help="accepted residues (default 0)")


def _add_search_args(p, k=3, max_size=3, max_index=11):
    p.add_argument("--k", type=int, default=k)
    p.add_argument("--max-size", type=int, default=max_size)
    p.add_argument("--max-index", type=int, default=max_index)
    p.add_argument("--fr-size", type=int, default=5)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--time-budget-ms", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramsey-orderly", description=__doc__.split("\n")[0])
    parser.add_argument("--manifest", help="also write the run manifest to this file")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a term and report orderliness")
    p.add_argument("term")
    p.add_argument("--signature")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="list orderly terms within bounds")
    p.add_argument("--signature")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--max-index", type=int, default=2)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("reduce", help="reduce an assignment by an admissible witness")
    p.add_argument("--algebra", required=True)
    p.add_argument("--assignment", required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("search", help="bounded search for homogeneous or constant reductions")
    p.add_argument("kind", choices=["hindman", "tuple", "constant"])
    _add_view_args(p)
    _add_coloring_args(p)
    p.add_argument("--n", type=int, default=2, help="tuple length for 'tuple'")
    p.add_argument("--component", type=int, help="judge tuples by this component of the coloring")
    _add_search_args(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sharp", help="sharp construction helpers")
    p.add_argument("action", choices=["split", "transform", "pair"])
    p.add_argument("term", nargs="?")
    p.add_argument("--signature")
    p.add_argument("--witness")
    p.set_defaults(func=cmd_sharp)

    p = sub.add_parser("check", help="run an exhaustive check within bounds")
    p.add_argument(
        "name",
        choices=["congruence", "semigroup", "prehomogeneous", "claim-1010a", "thm-0107b", "obstruction", "injectivity"],
    )
    _add_view_args(p)
    _add_coloring_args(p)
    p.add_argument("--t", help="witness t for the sharp reduction check")
    p.add_argument("--u", help="witness u for the sharp reduction check (even length)")
    p.add_argument("--d-from-base", action="store_true", help="sharp reduction check: reduce the base, not C, by u")
    p.add_argument("--pairs", help="pair-algebra check: assignment of pairs")
    p.add_argument("--symbol", help="obstruction: symbol to count (default: first)")
    _add_search_args(p, k=3, max_size=5, max_index=7)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = _Inputs()
    start = time.perf_counter()
    try:
        report, status, summary = args.func(inputs, args)
    except (OrderlyError, UserError, ValueError, KeyError, TypeError, OSError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing key {exc}"
        report, status, summary = {"error": msg, "error_type": type(exc).__name__}, 2, f"error: {msg}"
    wall_ms = round((time.perf_counter() - start) * 1000, 3)
    sys.stdout.write(json.dumps(to_jsonable(report), indent=2) + "\n")
    config = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
    manifest = {
        "command": args.command,
        "argv": argv,
        "config": config,
        "inputs": inputs.digests,
        "version": __version__,
        "outcome": {"exit_status": status, "summary": summary},
        "wall_time_ms": wall_ms,
    }
    print(summary, file=sys.stderr)
    print(json.dumps(manifest), file=sys.stderr)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            json.dump(manifest, fh, indent=2)
    return status


if __name__ == "__main__":
    sys.exit(main())
