"""Command-line interface: JSON in, JSON out.

Exit codes: 0 success, 1 domain error (a JSON error object is printed to
stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from . import core, families, trees
from .documents import (
    SCHEMA,
    DocumentError,
    certificate_from_json,
    certificate_to_json,
    element_to_json,
    elements_to_json,
    group_to_json,
    int_to_json,
    read_set,
    set_to_json,
)
from .errors import ZeroSumError


def _load(args) -> Any:
    if args.json is not None:
        text = args.json
    elif args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None


def _with_scale(out: Dict[str, Any], scale: int) -> Dict[str, Any]:
    if scale != 1:
        out["scale"] = int_to_json(scale)
    return out


def cmd_check(args):
    D, scale = read_set(_load(args))
    table = core.decomposition_table(D)
    return _with_scale({
        "schema": SCHEMA,
        "decomposable": core.is_decomposable(D),
        "group": group_to_json(D.ctx),
        "elems": elements_to_json(D.elems),
        "table": [
            {"element": element_to_json(d), "pairs": [elements_to_json(p) for p in pairs]}
            for d, pairs in table.items()
        ],
    }, scale)


def cmd_zmin(args):
    D, scale = read_set(_load(args))
    w = core.min_zero_sum(D, cap=args.cap_set_size)
    return _with_scale({
        "schema": SCHEMA,
        "z": w.z,
        "witness": None if w.witness is None else elements_to_json(w.witness.elems),
        "size": len(D),
    }, scale)


def cmd_certify(args):
    D, scale = read_set(_load(args))
    cert = trees.certify(D, node_cap=args.cap_nodes)
    return _with_scale(certificate_to_json(D, cert, trees.verify_certificate(D, cert)), scale)


def cmd_verify(args):
    D, cert = certificate_from_json(_load(args))
    return {"schema": SCHEMA, "valid": trees.verify_certificate(D, cert)}


def cmd_minimal(args):
    D, scale = read_set(_load(args))
    M = core.minimal_decomposable_subset(D)
    return _with_scale(set_to_json(M), scale)


def cmd_weights(args):
    D, scale = read_set(_load(args))
    wf = core.weight_function(D)
    return _with_scale({
        "schema": SCHEMA,
        "group": group_to_json(D.ctx),
        "weights": [
            {"element": element_to_json(x), "weight": w} for x, w in wf.weights.items()
        ],
        "choice": [
            {"element": element_to_json(x), "pair": elements_to_json(p)}
            for x, p in wf.choice.items()
        ],
    }, scale)


def cmd_reduce(args):
    D, scale = read_set(_load(args))
    image, h = core.reduce_to_line(D)
    out = set_to_json(image)
    out["reduction"] = {
        "bound": int_to_json(h.bound),
        "base": int_to_json(h.base),
        "multipliers": [int_to_json(m) for m in h.multipliers],
    }
    out["mapping"] = [
        {"from": element_to_json(x), "to": int_to_json(h(x))} for x in D.elems
    ]
    return _with_scale(out, scale)


def cmd_boolean_zs(args):
    D, _ = read_set(_load(args))
    T = core.boolean_zero_sum(D)
    return {"schema": SCHEMA, "group": group_to_json(D.ctx), "T": elements_to_json(T.elems)}


def cmd_gen(args):
    if args.family == "dn":
        D = families.example2_set(args.n)
    else:
        D = families.example1_set(args.n)
    return set_to_json(D)


def cmd_classify(args):
    report = families.classify(args.size, args.window, jobs=args.jobs).to_dict()
    if args.no_sets:
        for claim in report["claims"]:
            del claim["hypothesis_sets"]
    return report


def cmd_hunt(args):
    record = families.hunt(
        args.size,
        trials=args.budget,
        seed=args.seed,
        max_seconds=args.max_seconds,
        jobs=args.jobs,
        spread=args.spread,
    )
    return record.to_dict()


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerosum",
        description="Decomposable sets, zero-sum subsets and certificates (JSON I/O).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", nargs="?", default="-",
                       help="set document path, or - for stdin (default)")
        p.add_argument("--json", metavar="DOC", help="inline JSON document")
        return p

    p = with_input(sub.add_parser("check", help="decomposability and decomposition table"))
    p.set_defaults(func=cmd_check)

    p = with_input(sub.add_parser("zmin", help="z(D) with a minimum zero-sum witness"))
    p.add_argument("--cap-set-size", type=_positive, default=core.DEFAULT_SET_SIZE_CAP)
    p.set_defaults(func=cmd_zmin)

    p = with_input(sub.add_parser("certify", help="sets A, B with sum(A) + sum(B) = 0"))
    p.add_argument("--cap-nodes", type=_positive, default=trees.DEFAULT_NODE_CAP)
    p.set_defaults(func=cmd_certify)

    p = with_input(sub.add_parser("verify", help="check a certificate document"))
    p.set_defaults(func=cmd_verify)

    p = with_input(sub.add_parser("minimal", help="a minimal decomposable subset"))
    p.set_defaults(func=cmd_minimal)

    p = with_input(sub.add_parser("weights", help="weight function of a minimal decomposable set"))
    p.set_defaults(func=cmd_weights)

    p = with_input(sub.add_parser("reduce", help="map a subset of Z^k into Z"))
    p.set_defaults(func=cmd_reduce)

    p = with_input(sub.add_parser("boolean-zs", help="zero-sum subset of size <= 3 in Z_2^k"))
    p.set_defaults(func=cmd_boolean_zs)

    p = sub.add_parser("gen", help="explicit families")
    p.add_argument("family", choices=["dn", "cyclic"])
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("classify", help="exhaustive check of small cases in a window")
    p.add_argument("--size", type=_positive, required=True)
    p.add_argument("--window", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--no-sets", action="store_true",
                   help="omit the per-claim lists of hypothesis sets")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hunt", help="random search for sets with large z")
    p.add_argument("--size", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, default=2000, help="number of trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-seconds", type=float, default=None,
                   help="wall-clock cut-off; output is then no longer reproducible")
    p.add_argument("--spread", type=_positive, default=None,
                   help="magnitude of random starting values (default 2*size)")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_hunt)
    return parser


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except ZeroSumError as exc:
        print(dumps({"schema": SCHEMA, "error": {"code": exc.code, "message": str(exc)}}), file=out)
        return 1
    print(dumps(result), file=out)
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
