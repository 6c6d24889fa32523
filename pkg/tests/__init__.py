"""Tests for the even derangement graph verifier."""
