"""Request models for the HTTP service.

One model per endpoint, mirroring the keyword arguments of the matching
handler in api.py.  Fields left at None fall back to the handler default.
"""

from __future__ import annotations

from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field


class HomRequest(BaseModel):
    expr_a: str
    expr_b: str
    p: int = Field(ge=2)
    eval_dim: Optional[int] = None
    unsafe_eval_dim: Optional[int] = None
    show_basis: bool = False


class ExtRequest(BaseModel):
    expr_a: str
    expr_b: str
    p: int = Field(ge=2)
    max_deg: int = Field(ge=0)
    eval_dim: Optional[int] = None
    unsafe_eval_dim: Optional[int] = None
    show_aux: bool = False
    max_layer_dim: Optional[int] = None
    cache_dir: Optional[str] = None


class ResolveRequest(BaseModel):
    expr: str
    p: int = Field(ge=2)
    length: int = Field(ge=0)
    eval_dim: Optional[int] = None
    unsafe_eval_dim: Optional[int] = None
    max_layer_dim: Optional[int] = None
    cache_dir: Optional[str] = None


class LellRequest(BaseModel):
    expr: str
    p: int = Field(ge=2)
    r: int = Field(ge=1)
    length: int = Field(ge=0)
    eval_dim: Optional[int] = None
    unsafe_eval_dim: Optional[int] = None
    max_layer_dim: Optional[int] = None
    cache_dir: Optional[str] = None


class HilbertRequest(BaseModel):
    group: str
    p: int = 3
    r: int = 1
    ell: int = 1
    dmax: int = 1
    closed_form_only: bool = False
    max_layer_dim: Optional[int] = None
    cache_dir: Optional[str] = None


class VerifyRequest(BaseModel):
    check: str
    p: Optional[int] = None
    r: Optional[int] = None
    d: Optional[int] = None
    n: Optional[int] = None
    mu: Optional[List[int]] = None
    family: Optional[str] = None
    F: Optional[str] = None
    G: Optional[str] = None
    max_degree: Optional[int] = None
    group: Optional[str] = None
    ell: Optional[int] = None
    d_max: Optional[int] = None
    case: Optional[str] = None
    max_layer_dim: Optional[int] = None
    cache_dir: Optional[str] = None


class OracleRequest(BaseModel):
    expr: str
    weight: Union[List[int], List[List[int]]]
    p: int = Field(ge=2)
    eval_dim: Optional[int] = None


class CacheRequest(BaseModel):
    action: str
    cache_dir: Optional[str] = None
