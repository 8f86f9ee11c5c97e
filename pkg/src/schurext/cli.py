"""Command-line entry point.

A thin client over the handler layer in api.py (the HTTP service wraps the
same handlers, so the two agree by construction).  JSON output is
canonical and machine-diffable; csv and markdown are lossy renderings.

Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
3 resource-guard abort.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import api

_EXIT = {"ok": 0, "fail": 1, "usage": 2, "guard": 3}


def _flatten(obj, prefix=""):
    rows = []
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            rows.extend(_flatten(obj[k], "%s%s." % (prefix, k)))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, "%s%d." % (prefix, i)))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _render(payload, fmt):
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    rows = _flatten(payload)
    if fmt == "csv":
        return "\n".join("%s,%s" % (k, v) for k, v in rows)
    lines = ["| key | value |", "| --- | --- |"]
    lines.extend("| %s | %s |" % (k, v) for k, v in rows)
    return "\n".join(lines)


def _weight(text):
    """Parse a weight: rows separated by ';', entries by ','."""
    rows = [r for r in text.split(";") if r.strip() != ""]
    out = tuple(
        tuple(int(x) for x in r.split(",") if x.strip() != "") for r in rows
    )
    if len(out) == 1:
        return out[0]
    return out


def _mu(text):
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


def _common(sp, cache=True):
    sp.add_argument("--format", choices=("json", "csv", "md"), default="json")
    if cache:
        sp.add_argument(
            "--cache-dir",
            default=None,
            help="resolution cache directory (default: SCHUREXT_CACHE_DIR "
            "or the user cache dir; pass '' to disable)",
        )
        sp.add_argument("--max-layer-dim", type=int, default=None)
    sp.add_argument(
        "--seed", type=int, default=None,
        help="seed for randomized lift cross-checks",
    )


def _eval_flags(sp):
    sp.add_argument(
        "--eval-dim", type=int, default=None,
        help="evaluation dimension (default: the homogeneity degree, the "
        "smallest faithful choice)",
    )
    sp.add_argument(
        "--unsafe-eval-dim", type=int, default=None,
        help="evaluate below the homogeneity degree (higher Ext groups are "
        "then truncated)",
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="schurext",
        description="Exact Ext-group engine for strict polynomial functors "
        "over prime fields.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("hom", help="dimension of a Hom space")
    sp.add_argument("expr_a")
    sp.add_argument("expr_b")
    sp.add_argument("--p", type=int, required=True)
    _eval_flags(sp)
    sp.add_argument("--show-basis", action="store_true")
    _common(sp, cache=False)

    sp = sub.add_parser("ext", help="Ext table between two functors")
    sp.add_argument("expr_a")
    sp.add_argument("expr_b")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--max-deg", type=int, required=True)
    _eval_flags(sp)
    sp.add_argument("--show-aux", action="store_true")
    _common(sp)

    sp = sub.add_parser("resolve", help="projective resolution layer summary")
    sp.add_argument("expr")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--length", type=int, required=True)
    _eval_flags(sp)
    _common(sp)

    sp = sub.add_parser(
        "lell", help="homology of the derived twist adjoint"
    )
    sp.add_argument("expr")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--length", type=int, required=True)
    _eval_flags(sp)
    _common(sp)

    sp = sub.add_parser(
        "hilbert", help="invariant-cohomology Hilbert table"
    )
    sp.add_argument("--group", choices=("sp", "o"), required=True)
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--l", type=int, default=1, dest="ell")
    sp.add_argument("--dmax", type=int, default=1)
    sp.add_argument("--closed-form-only", action="store_true")
    _common(sp)

    sp = sub.add_parser("verify", help="run a named verification check")
    sp.add_argument("check", choices=sorted(api.theorems.CHECKS))
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--mu", type=_mu, default=None)
    sp.add_argument(
        "--family", choices=("gamma", "wedge", "sym"), default=None
    )
    sp.add_argument("--F", default=None)
    sp.add_argument("--G", default=None)
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument("--group", choices=("sp", "o"), default=None)
    sp.add_argument("--l", type=int, default=None, dest="ell")
    sp.add_argument("--dmax", type=int, default=None)
    sp.add_argument("--case", default=None)
    _common(sp)

    sp = sub.add_parser(
        "oracle", help="weight-space dimension by direct counting"
    )
    sp.add_argument("expr")
    sp.add_argument("--weight", type=_weight, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--eval-dim", type=int, default=None)
    _common(sp, cache=False)

    sp = sub.add_parser("cache", help="resolution cache managament")
    sp.add_argument("action", choices=("stats", "clear"))
    sp.add_argument("--cache-dir", default=None)
    sp.add_argument("--format", choices=("json", "csv", "md"), default="json")
    sp.add_argument("--seed", type=int, default=None)
    return ap


_VERIFY_KEYS = {
    "p": "p", "r": "r", "d": "d", "n": "n", "mu": "mu", "family": "family",
    "F": "F", "G": "G", "max_degree": "max_degree", "group": "group",
    "ell": "ell", "dmax": "d_max", "case": "case",
}


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    kw = {}
    if getattr(args, "max_layer_dim", None):
        kw["max_layer_dim"] = args.max_layer_dim
    try:
        if args.command == "hom":
            payload = api.run_hom(
                args.expr_a, args.expr_b, args.p,
                eval_dim=args.eval_dim, unsafe_eval_dim=args.unsafe_eval_dim,
                show_basis=args.show_basis,
            )
        elif args.command == "ext":
            payload = api.run_ext(
                args.expr_a, args.expr_b, args.p, args.max_deg,
                eval_dim=args.eval_dim, unsafe_eval_dim=args.unsafe_eval_dim,
                show_aux=args.show_aux, cache_dir=args.cache_dir, **kw,
            )
        elif args.command == "resolve":
            payload = api.run_resolve(
                args.expr, args.p, args.length,
                eval_dim=args.eval_dim, unsafe_eval_dim=args.unsafe_eval_dim,
                cache_dir=args.cache_dir, **kw,
            )
        elif args.command == "lell":
            payload = api.run_lell(
                args.expr, args.p, args.r, args.length,
                eval_dim=args.eval_dim, unsafe_eval_dim=args.unsafe_eval_dim,
                cache_dir=args.cache_dir, **kw,
            )
        elif args.command == "hilbert":
            payload = api.run_hilbert(
                args.group, args.p, args.r, args.ell, args.dmax,
                closed_form_only=args.closed_form_only,
                cache_dir=args.cache_dir, **kw,
            )
        elif args.command == "verify":
            overrides = {}
            for attr, param in _VERIFY_KEYS.items():
                v = getattr(args, attr, None)
                if v is not None:
                    overrides[param] = v
            payload = api.run_verify(
                args.check, cache_dir=args.cache_dir, **kw, **overrides
            )
        elif args.command == "oracle":
            payload = api.run_oracle(
                args.expr, args.weight, args.p, eval_dim=args.eval_dim
            )
        else:
            payload = api.run_cache(args.action, cache_dir=args.cache_dir)
    except api.UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    print(_render(payload, args.format))
    return _EXIT[payload["status"]]


if __name__ == "__main__":
    sys.exit(main())
