"""Shared test fixtures; presence of this file also puts tests/ on sys.path."""
