"""Test fixtures package for the mirrorwell test suite."""
