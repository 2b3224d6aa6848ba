"""Engine package tests."""
