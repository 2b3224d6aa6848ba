"""Common package tests."""
