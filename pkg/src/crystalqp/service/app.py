"""FastAPI wiring around the handler layer."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..boundary import NonRigidFrozenError, SpanConditionError
from ..tropical import ReachabilityError
from . import handlers as H
from . import schemas as S


def _guard(fn, *args):
    try:
        return fn(*args)
    except H.UsageError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except ReachabilityError as exc:
        raise HTTPException(status_code=409, detail=f"reachability budget: {exc}")
    except (NonRigidFrozenError, SpanConditionError) as exc:
        raise HTTPException(status_code=409, detail=str(exc))


def create_app():
    app = FastAPI(title="crystalqp",
                  description="crystal structures on tropical points of "
                              "cluster varieties")

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/seed", response_model=S.SeedModel)
    def seed(spec: S.SeedSpec):
        return _guard(H.normalize_seed, spec)

    @app.post("/mutate", response_model=S.SeedModel)
    def mutate(req: S.MutateRequest):
        return _guard(H.mutate, req)

    @app.post("/invariants", response_model=S.InvariantsResponse)
    def invariants(req: S.InvariantsRequest):
        return _guard(H.invariants, req)

    @app.post("/cartan", response_model=S.CartanResponse)
    def cartan(req: S.CartanRequest):
        return _guard(H.cartan, req)

    @app.post("/rho", response_model=S.RhoResponse)
    def rho(req: S.DeltaRequest):
        return _guard(H.rho, req)

    @app.post("/kashiwara", response_model=S.KashiwaraResponse)
    def kashiwara(req: S.WordRequest):
        return _guard(H.kashiwara, req)

    @app.post("/crystal-graph", response_model=S.GraphResponse)
    def crystal_graph(req: S.GraphRequest):
        return _guard(H.graph, req)

    @app.post("/verify", response_model=S.VerifyResponse)
    def verify(req: S.VerifyRequest):
        return _guard(H.verify, req)

    @app.post("/character", response_model=S.CharacterResponse)
    def character(req: S.CharacterRequest):
        return _guard(H.character, req)

    @app.post("/derivation", response_model=S.DerivationResponse)
    def derivation(req: S.DerivationRequest):
        return _guard(H.derivation, req)

    @app.post("/orders", response_model=S.OrdersResponse)
    def orders(req: S.OrdersRequest):
        return _guard(H.orders, req)

    return app


app = create_app()
