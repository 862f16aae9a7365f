"""HTTP service wrapping the run handlers.

Each endpoint takes one of the request models from `runs` and returns the
RunReport (report JSON plus text artifacts); the CLI is a thin client over
the same handlers and can talk to a running instance of this app.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .runs import (BoostRequest, ExportRequest, GTRequest, RunReport,
                   SpectrumRequest, VerifyRequest, boost_run, export_run,
                   gt_run, spectrum_run, verify_run)

app = FastAPI(title="quaplectic", version=__version__)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


def _guard(handler, req) -> RunReport:
    try:
        return handler(req)
    except (ValueError, ZeroDivisionError, IndexError, KeyError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.post("/verify", response_model=RunReport)
def verify_endpoint(req: VerifyRequest) -> RunReport:
    return _guard(verify_run, req)


@app.post("/spectrum", response_model=RunReport)
def spectrum_endpoint(req: SpectrumRequest) -> RunReport:
    return _guard(spectrum_run, req)


@app.post("/boost", response_model=RunReport)
def boost_endpoint(req: BoostRequest) -> RunReport:
    return _guard(boost_run, req)


@app.post("/gt", response_model=RunReport)
def gt_endpoint(req: GTRequest) -> RunReport:
    return _guard(gt_run, req)


@app.post("/export", response_model=RunReport)
def export_endpoint(req: ExportRequest) -> RunReport:
    return _guard(export_run, req)
