"""
Global pytest configuration and fixtures for the mirrorwell test suite.

This module provides:
- Path-based markers (unit, integration, api, e2e)
- FastAPI test client setup
"""

import os

import pytest
from fastapi.testclient import TestClient

from mirrorwell.run_context import clear_run_id


@pytest.fixture(scope="session")
def test_app():
    """The FastAPI application under test."""
    from mirrorwell.main import app

    return app


@pytest.fixture
def client(test_app):
    """FastAPI test client."""
    return TestClient(test_app)


@pytest.fixture(autouse=True)
def reset_run_id():
    """Keep run ids from leaking between tests."""
    clear_run_id()
    yield
    clear_run_id()


# Import API client fixtures
pytest_plugins = ["tests.fixtures.api_client"]


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers based on file location."""
    for item in items:
        path = str(item.fspath)
        if f"{os.sep}unit{os.sep}" in path:
            item.add_marker(pytest.mark.unit)
        elif f"{os.sep}integration{os.sep}" in path:
            item.add_marker(pytest.mark.integration)
        elif f"{os.sep}api{os.sep}" in path:
            item.add_marker(pytest.mark.api)
        elif f"{os.sep}e2e{os.sep}" in path:
            item.add_marker(pytest.mark.e2e)
