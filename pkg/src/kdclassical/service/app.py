"""FastAPI service exposing the package operations over JSON.

Run with:  uvicorn kdclassical.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import handlers
from ..errors import InternalConsistencyError
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="kdclassical",
        description=(
            "Kirkwood-Dirac quasiprobability tables, classicality decisions, "
            "block structure, witnesses, and DFT classical-state catalogs."
        ),
        version="0.1.0",
    )

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(InternalConsistencyError)
    async def _internal_error(_: Request, exc: InternalConsistencyError) -> JSONResponse:
        return JSONResponse(
            status_code=500, content={"detail": f"internal consistency failure: {exc}"}
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/table", response_model=schemas.TableResponse)
    def table(req: schemas.TableRequest):
        tol = req.tolerances.resolve()
        return handlers.table_report(req.matrix.to_array(), req.state.to_array(), tol)

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.ClassifyRequest):
        tol = req.tolerances.resolve()
        return handlers.classify_report(req.matrix.to_array(), req.state.to_array(), tol)

    @app.post("/blocks", response_model=schemas.BlocksResponse)
    def blocks(req: schemas.BlocksRequest):
        tol = req.tolerances.resolve()
        psi = req.state.to_array() if req.state is not None else None
        return handlers.blocks_report(
            req.matrix.to_array(), psi=psi, rows=req.rows, cols=req.cols, tol=tol
        )

    @app.post("/cluster", response_model=schemas.ClusterResponse)
    def cluster(req: schemas.ClusterRequest):
        return handlers.cluster_report(req.to_array(), req.tolerances.resolve())

    @app.post("/witness", response_model=schemas.WitnessResponse)
    def witness(req: schemas.WitnessRequest):
        tol = req.tolerances.resolve()
        return handlers.witness_report(req.matrix.to_array(), req.state.to_array(), tol)

    @app.post("/oracle", response_model=schemas.OracleResponse)
    def oracle(req: schemas.OracleRequest):
        tol = req.tolerances.resolve()
        return handlers.oracle_report(req.matrix.to_array(), max_d=req.max_d, tol=tol)

    @app.post("/oracle/sweep", response_model=schemas.SweepResponse)
    def oracle_sweep(req: schemas.SweepRequest):
        tol = req.tolerances.resolve()
        return handlers.sweep_report(req.matrix.to_array(), req.trials, req.seed, tol)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        tol = req.tolerances.resolve()
        return handlers.verify_report(req.matrix.to_array(), req.sa, req.sb, tol)

    @app.post("/dft-enum", response_model=schemas.DftEnumResponse)
    def dft_enum(req: schemas.DftEnumRequest):
        records = handlers.dft_enum_records(req.d, req.tolerances.resolve())
        return {"d": req.d, "count": len(records), "records": records}

    return app


app = create_app()
