"""Test suite for symframe."""
