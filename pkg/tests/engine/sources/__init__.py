"""Tests for the sources package."""
