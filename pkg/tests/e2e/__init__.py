"""End-to-end tests - complete command-line workflows."""
