"""Request/response models for the service endpoints.

A seed is addressed either by catalog name (unipotent:A3, base-affine:D4,
grassmannian:2x3, omega:A2, canonical:2,3,6) or by an inline matrix.
Vertex indices are 0-based everywhere.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, model_validator


class SeedModel(BaseModel):
    n: int
    frozen: list[int]
    B: list[list[int]]
    label: Optional[str] = None


class SeedSpec(BaseModel):
    name: Optional[str] = None
    seed: Optional[SeedModel] = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.name is None) == (self.seed is None):
            raise ValueError("give exactly one of name or seed")
        return self


class MutateRequest(BaseModel):
    seed: SeedSpec
    steps: list[int]


class DeltaRequest(BaseModel):
    seed: SeedSpec
    delta: list[int]
    I: Optional[list[int]] = None


class WordRequest(BaseModel):
    seed: SeedSpec
    delta: list[int]
    word: list[int]
    I: Optional[list[int]] = None


class InvariantsRequest(BaseModel):
    seed: SeedSpec
    max_depth: int = 64


class CartanRequest(BaseModel):
    seed: SeedSpec
    I: Optional[list[int]] = None


class GraphRequest(BaseModel):
    seed: SeedSpec
    box: int = 2
    I: Optional[list[int]] = None
    close_under_lowering: bool = False
    weight: Optional[list[int]] = None


class VerifyRequest(BaseModel):
    seed: SeedSpec
    check: str = "axioms"            # axioms | serre | bk
    box: int = 2
    I: Optional[list[int]] = None
    exponent_bound: int = 1          # for bk: cluster-monomial exponent cap
    jobs: int = 1


class CharacterRequest(BaseModel):
    seed: SeedSpec
    delta: list[int]


class DerivationRequest(BaseModel):
    seed: SeedSpec
    i: int
    kind: str = "R"                  # R | Rstar | L | H
    I: Optional[list[int]] = None
    apply_to: Optional[list[dict]] = None   # optional polynomial JSON


class OrdersRequest(BaseModel):
    seed: SeedSpec
    d1: list[int]
    d2: list[int]
    I: Optional[list[int]] = None


class BoundaryModel(BaseModel):
    i: int
    reachable: bool
    rigid: bool
    seq_to_simple: list[int]
    dual_seq_to_simple: list[int]
    eps: list[int]
    eps_check: list[int]
    eps_star: list[int]
    eps_star_check: list[int]
    dim_E: list[int]
    dim_Estar: list[int]


class InvariantsResponse(BaseModel):
    seed: SeedModel
    boundary: list[BoundaryModel]


class CartanResponse(BaseModel):
    I: list[int]
    C: list[list[int]]
    Cstar: list[list[int]]
    tau_exact_pairs: list[list[int]]
    grading: dict[str, list[str]]
    grading_integral: bool
    grading_solution_dim: int
    mode: str


class RhoResponse(BaseModel):
    delta: list[int]
    mu_supported: bool
    rho: dict[str, int]
    rho_star: dict[str, int]
    lam: dict[str, int]
    wt: dict[str, str]


class VerifyResponse(BaseModel):
    check: str
    checked: int
    ok: bool
    violations: list


class PolyTerm(BaseModel):
    exp: list[int]
    coef: str


class CharacterResponse(BaseModel):
    delta: list[int]
    terms: list[PolyTerm]
    pretty: str


class DerivationResponse(BaseModel):
    kind: str
    i: int
    images: dict[str, list[PolyTerm]]
    applied: Optional[list[PolyTerm]] = None


class OrdersResponse(BaseModel):
    dominance_d1_lt_d2: Optional[bool]
    dominance_d2_lt_d1: Optional[bool]
    rho_order: str
    note: str = ""


class KashiwaraResponse(BaseModel):
    word: list[int]
    values: list[int]


class GraphResponse(BaseModel):
    graph: dict
    dot: str
