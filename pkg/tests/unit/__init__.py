"""Unit tests - Fast isolated tests for individual components."""