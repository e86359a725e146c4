"""Integration tests - cross-module numerical checks against reference values."""
