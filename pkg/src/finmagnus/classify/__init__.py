"""Affine searches, the test corpus, and the claim suites."""
