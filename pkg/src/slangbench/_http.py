"""Small shared HTTP POST helper with retry/backoff for model endpoints."""

from __future__ import annotations

import logging
import time

import requests

from .errors import EndpointError

logger = logging.getLogger(__name__)

RETRYABLE_STATUS = {429, 500, 502, 503, 504}


def post_json(
    url: str,
    payload: dict,
    headers: dict[str, str] | None = None,
    attempts: int = 3,
    timeout: float = 60.0,
    backoff: float = 0.5,
) -> dict:
    """POST ``payload`` as JSON, retrying transient failures with exponential backoff."""
    last_err: str = "no attempts made"
    for attempt in range(attempts):
        if attempt:
            time.sleep(backoff * (2 ** (attempt - 1)))
        try:
            resp = requests.post(url, json=payload, headers=headers or {}, timeout=timeout)
        except requests.RequestException as exc:
            last_err = str(exc)
            logger.warning("POST %s failed (attempt %d/%d): %s", url, attempt + 1, attempts, exc)
            continue
        if resp.status_code in RETRYABLE_STATUS:
            last_err = f"HTTP {resp.status_code}"
            logger.warning("POST %s got %s (attempt %d/%d)", url, resp.status_code, attempt + 1, attempts)
            continue
        if not resp.ok:
            raise EndpointError(f"POST {url} failed: HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            return resp.json()
        except ValueError as exc:
            raise EndpointError(f"POST {url}: non-JSON response: {exc}") from exc
    raise EndpointError(f"POST {url} failed after {attempts} attempts: {last_err}")
