"""HTTP service over the same handlers the command line uses.

Every endpoint returns the handler payload verbatim: computation results,
verification failures, and resource-guard aborts all come back with HTTP
200 and a status field of ok / fail / guard.  Malformed requests (bad
expressions, out-of-range parameters) return 422.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import api
from . import models


def _guard_usage(fn, **kwargs):
    try:
        return fn(**kwargs)
    except api.UsageError as e:
        raise HTTPException(status_code=422, detail=str(e))


def create_app():
    app = FastAPI(
        title="schurext",
        description="Exact Ext-group engine for strict polynomial functors "
        "over prime fields.",
    )

    def _dim_kw(req):
        kw = {}
        if req.max_layer_dim is not None:
            kw["max_layer_dim"] = req.max_layer_dim
        return kw

    @app.get("/health")
    def health():
        return {"status": "ok", "schema": api.PAYLOAD_SCHEMA}

    @app.post("/hom")
    def hom(req: models.HomRequest):
        return _guard_usage(
            api.run_hom,
            expr_a=req.expr_a, expr_b=req.expr_b, p=req.p,
            eval_dim=req.eval_dim, unsafe_eval_dim=req.unsafe_eval_dim,
            show_basis=req.show_basis,
        )

    @app.post("/ext")
    def ext(req: models.ExtRequest):
        return _guard_usage(
            api.run_ext,
            expr_a=req.expr_a, expr_b=req.expr_b, p=req.p,
            max_deg=req.max_deg, eval_dim=req.eval_dim,
            unsafe_eval_dim=req.unsafe_eval_dim, show_aux=req.show_aux,
            cache_dir=req.cache_dir, **_dim_kw(req),
        )

    @app.post("/resolve")
    def resolve(req: models.ResolveRequest):
        return _guard_usage(
            api.run_resolve,
            expr_text=req.expr, p=req.p, length=req.length,
            eval_dim=req.eval_dim, unsafe_eval_dim=req.unsafe_eval_dim,
            cache_dir=req.cache_dir, **_dim_kw(req),
        )

    @app.post("/lell")
    def lell(req: models.LellRequest):
        return _guard_usage(
            api.run_lell,
            expr_text=req.expr, p=req.p, r=req.r, length=req.length,
            eval_dim=req.eval_dim, unsafe_eval_dim=req.unsafe_eval_dim,
            cache_dir=req.cache_dir, **_dim_kw(req),
        )

    @app.post("/hilbert")
    def hilbert(req: models.HilbertRequest):
        return _guard_usage(
            api.run_hilbert,
            group=req.group, p=req.p, r=req.r, ell=req.ell, dmax=req.dmax,
            closed_form_only=req.closed_form_only,
            cache_dir=req.cache_dir, **_dim_kw(req),
        )

    @app.post("/verify")
    def verify(req: models.VerifyRequest):
        overrides = {}
        for name in ("p", "r", "d", "n", "family", "F", "G", "max_degree",
                     "group", "ell", "d_max", "case"):
            v = getattr(req, name)
            if v is not None:
                overrides[name] = v
        if req.mu is not None:
            overrides["mu"] = tuple(req.mu)
        return _guard_usage(
            api.run_verify,
            check=req.check, cache_dir=req.cache_dir,
            **_dim_kw(req), **overrides,
        )

    @app.post("/oracle")
    def oracle(req: models.OracleRequest):
        weight = (
            tuple(tuple(r) for r in req.weight)
            if req.weight and isinstance(req.weight[0], list)
            else tuple(req.weight)
        )
        return _guard_usage(
            api.run_oracle,
            expr_text=req.expr, weight=weight, p=req.p, eval_dim=req.eval_dim,
        )

    @app.post("/cache")
    def cache(req: models.CacheRequest):
        return _guard_usage(
            api.run_cache, action=req.action, cache_dir=req.cache_dir
        )

    return app
