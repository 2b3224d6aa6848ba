"""Tests for the omf package."""
