"""
API Client Test Fixtures

Provides FastAPI test client helpers.
"""

from typing import Any, Dict

import pytest
from fastapi.testclient import TestClient


@pytest.fixture
def api_headers():
    """Standard API headers for testing."""
    return {
        "Accept": "application/json",
        "User-Agent": "mirrorwell-test-client/1.0",
    }


@pytest.fixture
def api_get(client: TestClient, api_headers):
    """GET helper returning (status code, decoded JSON body)."""

    def _get(path: str, **params: Any):
        response = client.get(path, params=params, headers=api_headers)
        return response.status_code, response.json()

    return _get


def error_of(body: Dict[str, Any]) -> Dict[str, Any]:
    """The error object of a failed request body."""
    assert "error" in body, body
    return body["error"]
