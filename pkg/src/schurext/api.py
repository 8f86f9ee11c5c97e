"""Shared handler layer between the command line and the HTTP service.

Every handler takes plain keyword arguments and returns a JSON-able dict
with a "schema" tag and a "status" field:

    ok      computed without incident (for verify: the check passed)
    fail    a verification ran to completion and found a mismatch
    guard   the resource guard aborted the computation
    usage   the request itself was malformed

The command line maps these to exit codes 0/1/3/2; the service returns
them inside the body with HTTP 200 (a failed check is a successful
computation) except for usage errors, which become HTTP 422.

JSON payloads are the source of truth: identical requests produce
byte-identical canonical JSON.  The csv and markdown renderings in the
command line are lossy.
"""

from __future__ import annotations

import numpy as np

from . import cache as cache_mod
from . import expr, homalg, polyrep, theorems

PAYLOAD_SCHEMA = "schurext-payload-v1"


class UsageError(ValueError):
    pass


def _payload(command, status, **body):
    out = {"schema": PAYLOAD_SCHEMA, "command": command, "status": status}
    out.update(body)
    return out


def _parse(text):
    try:
        return expr.parse(text)
    except expr.ExprError as e:
        raise UsageError(str(e))


def _eval_dims(degs, eval_dim, unsafe_eval_dim):
    """Evaluation dimensions, one per variable.

    The default is each variable's homogeneity degree, the smallest
    evaluation that is categorically faithful.  An explicit dimension may
    raise this; lowering it changes higher Ext groups and therefore needs
    the unsafe override.
    """
    if eval_dim is None and unsafe_eval_dim is None:
        return tuple(degs), None
    if unsafe_eval_dim is not None:
        dims = (int(unsafe_eval_dim),) * len(degs)
        warn = None
        if any(m < d for m, d in zip(dims, degs)):
            warn = (
                "evaluation below the homogeneity degree truncates the "
                "category; Ext groups above degree 0 are not faithful"
            )
        return dims, warn
    dims = (int(eval_dim),) * len(degs)
    bad = [(m, d) for m, d in zip(dims, degs) if m < d]
    if bad:
        raise UsageError(
            "eval dim %d is below the homogeneity degree %d; pass "
            "--unsafe-eval-dim to accept non-faithful Ext" % bad[0]
        )
    return dims, None


def _open_cache(cache_dir):
    if cache_dir == "":
        return None
    return cache_mod.ResolutionCache(cache_dir)


def run_hom(expr_a, expr_b, p, eval_dim=None, unsafe_eval_dim=None,
            show_basis=False):
    ast_a = _parse(expr_a)
    ast_b = _parse(expr_b)
    da = expr.degrees(ast_a, p)
    db = expr.degrees(ast_b, p)
    if len(da) != len(db):
        raise UsageError(
            "the two expressions take %d and %d variables" % (len(da), len(db))
        )
    dims, warn = _eval_dims(
        tuple(max(a, b) for a, b in zip(da, db)), eval_dim, unsafe_eval_dim
    )
    A = expr.evaluate(ast_a, p, dims)
    B = expr.evaluate(ast_b, p, dims)
    hs = homalg.hom_space(A, B)
    body = {
        "p": p,
        "eval_dims": list(dims),
        "dim": hs.dim,
        "dims_by_aux": {str(k): v for k, v in sorted(hs.dims_by_aux().items())},
    }
    if warn:
        body["warning"] = warn
    if show_basis:
        body["basis"] = [
            np.asarray(mat.todense() if hasattr(mat, "todense") else mat)
            .astype(int)
            .tolist()
            for mat in hs.basis
        ]
    return _payload("hom", "ok", **body)


def run_ext(expr_a, expr_b, p, max_deg, eval_dim=None, unsafe_eval_dim=None,
            show_aux=False, max_layer_dim=homalg.DEFAULT_MAX_LAYER_DIM,
            cache_dir=None):
    ast_a = _parse(expr_a)
    ast_b = _parse(expr_b)
    dims, warn = _eval_dims(expr.degrees(ast_a, p), eval_dim, unsafe_eval_dim)
    A = expr.evaluate(ast_a, p, dims)
    B = expr.evaluate(ast_b, p, dims)
    store = _open_cache(cache_dir)
    try:
        table = homalg.ext_groups(
            A, B, max_deg, max_layer_dim=max_layer_dim, cache=store
        )
    except homalg.ResourceGuard as e:
        return _payload("ext", "guard", reason=str(e))
    body = {
        "p": p,
        "eval_dims": list(dims),
        "max_deg": max_deg,
        "table": {str(i): v for i, v in sorted(table.collapse().items())},
    }
    if show_aux:
        body["table_by_aux"] = {
            "%d,%d" % k: v for k, v in sorted(table.entries.items())
        }
    if warn:
        body["warning"] = warn
    return _payload("ext", "ok", **body)


def run_resolve(expr_text, p, length, eval_dim=None, unsafe_eval_dim=None,
                max_layer_dim=homalg.DEFAULT_MAX_LAYER_DIM, cache_dir=None):
    ast = _parse(expr_text)
    dims, warn = _eval_dims(expr.degrees(ast, p), eval_dim, unsafe_eval_dim)
    F = expr.evaluate(ast, p, dims)
    store = _open_cache(cache_dir)
    try:
        res = homalg.resolve(
            F, length, max_layer_dim=max_layer_dim, cache=store
        )
    except homalg.ResourceGuard as e:
        return _payload("resolve", "guard", reason=str(e))
    body = {
        "p": p,
        "eval_dims": list(dims),
        "length": length,
        "layer_dims": res.layer_dims(),
        "layers": [
            [
                {"weight": [list(r) for r in w], "aux": a}
                for (w, a) in layer
            ]
            for layer in res.summand_weights()
        ],
    }
    if warn:
        body["warning"] = warn
    return _payload("resolve", "ok", **body)


def run_lell(expr_text, p, r, length, eval_dim=None, unsafe_eval_dim=None,
             max_layer_dim=homalg.DEFAULT_MAX_LAYER_DIM, cache_dir=None):
    ast = _parse(expr_text)
    dims, warn = _eval_dims(expr.degrees(ast, p), eval_dim, unsafe_eval_dim)
    F = expr.evaluate(ast, p, dims)
    store = _open_cache(cache_dir)
    try:
        hs = homalg.derived_ell_r(
            F, r, length, max_layer_dim=max_layer_dim, cache=store
        )
    except homalg.ResourceGuard as e:
        return _payload("lell", "guard", reason=str(e))
    body = {
        "p": p,
        "r": r,
        "eval_dims": list(dims),
        "homology_dims": {str(i): H.dim for i, H in enumerate(hs)},
        "homology_aux": [
            {str(k): v for k, v in sorted(theorems._aux_dims(H).items())}
            for H in hs
        ],
    }
    if warn:
        body["warning"] = warn
    return _payload("lell", "ok", **body)


def run_hilbert(group, p, r, ell, dmax, closed_form_only=False,
                max_layer_dim=homalg.DEFAULT_MAX_LAYER_DIM, cache_dir=None):
    if group not in ("sp", "o"):
        raise UsageError("group must be sp or o")
    store = _open_cache(cache_dir)
    try:
        table, report = theorems.cohomology_hilbert_series(
            group, p=p, r=r, ell=ell, d_max=dmax,
            ext_side=not closed_form_only,
            max_layer_dim=max_layer_dim, cache=store,
        )
    except ValueError as e:
        raise UsageError(str(e))
    status = "ok" if report.passed else "fail"
    return _payload(
        "hilbert", status, table=table.to_dict(), report=report.to_dict()
    )


_VERIFY_DEFAULTS = {
    "fs-star": {"p": 2, "r": 1},
    "chalupnik": {"p": 3, "r": 1, "d": 1, "family": "sym"},
    "twist-stability": {"p": 3, "r": 1, "F": "gamma2", "G": None},
    "untwisting": {"p": 3, "r": 1, "n": 2, "d": 1, "mu": (2,)},
    "multivariable": {"p": 3, "r": 1},
    "hilbert-3311": {"group": "o", "p": 3, "r": 1, "ell": 1, "d_max": 1},
    "invariants-ft": {"group": "o", "ell": 2, "d_max": 3, "p": 3},
    "lell": {"p": 3, "r": 1, "case": "sym-p"},
}


def run_verify(check, max_layer_dim=homalg.DEFAULT_MAX_LAYER_DIM,
               cache_dir=None, **overrides):
    if check not in theorems.CHECKS:
        raise UsageError(
            "unknown check %r; known: %s"
            % (check, ", ".join(sorted(theorems.CHECKS)))
        )
    params = dict(_VERIFY_DEFAULTS[check])
    for k, v in overrides.items():
        if v is None:
            continue
        if k not in params:
            raise UsageError("check %r does not take %r" % (check, k))
        params[k] = v
    if params.get("G", "") is None:
        params["G"] = params["F"]
    store = _open_cache(cache_dir)
    fn = theorems.CHECKS[check]
    if check == "invariants-ft":
        report = fn(**params)
    elif check == "hilbert-3311":
        _, report = fn(max_layer_dim=max_layer_dim, cache=store, **params)
    else:
        report = fn(max_layer_dim=max_layer_dim, cache=store, **params)
    status = {
        "pass": "ok",
        "fail": "fail",
        "not attempted": "guard",
    }[report.verdict]
    return _payload("verify", status, report=report.to_dict())


def run_oracle(expr_text, weight, p, eval_dim=None):
    ast = _parse(expr_text)
    n = expr.nvars(ast)
    degs = expr.degrees(ast, p)
    dims = (
        tuple(degs)
        if eval_dim is None
        else ((int(eval_dim),) * n)
    )
    target = []
    for i, m in enumerate(dims):
        row = tuple(weight[i]) if n > 1 else tuple(weight)
        if len(row) < m:
            row = row + (0,) * (m - len(row))
        if len(row) != m:
            raise UsageError(
                "weight row %d has %d entries, evaluation has %d"
                % (i, len(row), m)
            )
        target.append(row)
    dim = expr.oracle_weight_dim(ast, p, dims, tuple(target))
    return _payload(
        "oracle", "ok",
        p=p, eval_dims=list(dims),
        weight=[list(r) for r in target], dim=dim,
    )


def run_cache(action, cache_dir=None):
    store = cache_mod.ResolutionCache(cache_dir)
    if action == "stats":
        return _payload("cache", "ok", **store.stats())
    if action == "clear":
        removed = store.clear()
        return _payload("cache", "ok", removed=removed, root=str(store.root))
    raise UsageError("cache action must be stats or clear")
