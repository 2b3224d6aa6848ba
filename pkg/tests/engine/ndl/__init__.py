"""Tests for the ndl package."""
