"""Tests for the logdiff package."""
