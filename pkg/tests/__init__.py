"""
Test suite for mirrorwell.

Test Structure:
- unit/: Fast isolated tests of single modules
- integration/: Cross-module numerical checks (reference tables, oracle agreement)
- api/: FastAPI endpoint tests with the test client
- e2e/: Command-line workflows driven through cli.main

Test Execution:
- pytest -m unit                 # Fast unit tests only
- pytest -m "not slow"           # Everything except full table rebuilds
- pytest -m integration          # Reference tables and oracle agreement
- pytest                         # Full suite
"""
