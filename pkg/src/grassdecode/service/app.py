"""FastAPI application exposing the decoder toolkit over HTTP."""

from __future__ import annotations

from typing import get_type_hints

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import BudgetExceededError, InvalidInputError
from .handlers import ROUTES
from .schemas import ErrorResponse

app = FastAPI(title="grassdecode", version=__version__)


@app.exception_handler(InvalidInputError)
async def _invalid(request: Request, exc: InvalidInputError):
    body = ErrorResponse(error="invalid_input", detail=str(exc))
    return JSONResponse(status_code=400, content=body.model_dump())


@app.exception_handler(BudgetExceededError)
async def _budget(request: Request, exc: BudgetExceededError):
    body = ErrorResponse(error="budget_exceeded", detail=str(exc))
    return JSONResponse(status_code=413, content=body.model_dump())


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


def _register(path: str, model, handler) -> None:
    response_model = get_type_hints(handler)["return"]

    # each route gets its own closure so FastAPI sees the concrete request model
    def endpoint(req):
        return handler(req)

    endpoint.__annotations__ = {"req": model}
    app.post(path, response_model=response_model, name=handler.__name__)(endpoint)


for _path, _model, _handler in ROUTES.values():
    _register(_path, _model, _handler)
