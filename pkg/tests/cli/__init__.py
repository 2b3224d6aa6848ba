"""CLI package tests."""
