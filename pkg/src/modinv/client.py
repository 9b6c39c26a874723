"""Thin client for the service, used by the command line.

Without a server URL the requests run against the ASGI app in-process, so
the CLI needs no running daemon; with one they go over the network to a
deployed instance.
"""

from __future__ import annotations

import asyncio

import httpx


class ServiceClient:
    def __init__(self, base_url: str | None = None) -> None:
        self.base_url = base_url

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        """POST a JSON body; returns (status code, parsed JSON)."""
        return asyncio.run(self._post(path, payload))

    async def _post(self, path: str, payload: dict) -> tuple[int, dict]:
        if self.base_url:
            async with httpx.AsyncClient(base_url=self.base_url, timeout=None) as client:
                response = await client.post(path, json=payload)
        else:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://modinv.internal", timeout=None
            ) as client:
                response = await client.post(path, json=payload)
        return response.status_code, response.json()
