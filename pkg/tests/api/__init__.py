"""API tests - FastAPI endpoint tests with test client."""