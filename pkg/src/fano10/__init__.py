"""Exact computations for a one-nodal prime Fano threefold of degree 10 and its net of quadrics."""
