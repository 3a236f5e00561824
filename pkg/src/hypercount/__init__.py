"""Matching-bounded hypergraph workbench."""
