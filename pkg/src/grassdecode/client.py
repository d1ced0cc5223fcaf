"""Clients used by the CLI: in-process dispatch, or HTTP against a running service."""

from __future__ import annotations

from .errors import BudgetExceededError, GrassDecodeError, InvalidInputError


class RemoteBudgetExceeded(BudgetExceededError):
    """Budget error reported by a remote service; only the message survives the trip."""

    def __init__(self, detail: str):
        GrassDecodeError.__init__(self, detail)


class LocalClient:
    def call(self, name: str, payload: dict) -> dict:
        from .service.handlers import dispatch

        return dispatch(name, payload)


class HttpClient:
    """``http`` may be any httpx.Client already bound to the service (tests pass a TestClient)."""

    def __init__(self, base_url: str = "", timeout: float = 300.0, http=None):
        if http is None:
            import httpx

            http = httpx.Client(base_url=base_url.rstrip("/"), timeout=timeout)
        self._http = http

    def call(self, name: str, payload: dict) -> dict:
        from .service.handlers import ROUTES

        resp = self._http.post(ROUTES[name][0], json=payload)
        if resp.status_code == 200:
            return resp.json()
        try:
            body = resp.json()
        except ValueError:
            body = {"detail": resp.text}
        detail = body.get("detail", body)
        if body.get("error") == "budget_exceeded":
            raise RemoteBudgetExceeded(str(detail))
        raise InvalidInputError(f"server rejected request ({resp.status_code}): {detail}")
