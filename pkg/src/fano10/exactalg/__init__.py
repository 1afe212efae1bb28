"""Exact fields, sparse polynomials, linear algebra, resultants and factoring."""
