"""relpos: exact-plus-numeric engine for relative positions of n subspaces
of a complex Hilbert space (finite-dimensional, plus truncation labs for the
infinite-dimensional constructions)."""

__version__ = "0.1.0"
