"""Finite classifications, theories, logics and their fibered categories."""
