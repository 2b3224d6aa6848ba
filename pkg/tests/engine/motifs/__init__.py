"""Tests for the motifs package."""
