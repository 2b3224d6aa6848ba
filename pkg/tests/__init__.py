"""Tests for the ondl project."""
