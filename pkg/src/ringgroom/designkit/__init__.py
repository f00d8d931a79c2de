"""Combinatorial design primitives used by the builders."""
