"""Closed subspaces of C^d: span, intersection, sum, orthocomplement, images.

Exact subspaces carry a canonical column-reduced echelon basis, so equality
is literal matrix equality.  Float subspaces carry an orthonormal basis and
compare by principal angles against the tolerance.
"""

from __future__ import annotations

import numpy as np

from .errors import BackendMismatch, DimensionMismatch, SingularMatrixError
from .matrix import DEFAULT_TOL, EXACT, FLOAT, Matrix


def _canonical_columns(m: Matrix) -> Matrix:
    """Canonical column-reduced basis of the column span (exact backend)."""
    r, pivots = m.transpose().rref()
    return r.take_rows(range(len(pivots))).transpose()


def _orthonormal_columns(m: Matrix) -> Matrix:
    """Orthonormal basis of the column span (float backend), via SVD."""
    a = m.to_array()
    if a.size == 0:
        return Matrix.from_array(np.zeros((m.rows, 0)), tol=m.tol)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    r = int(np.sum(s > m.tol * max(1.0, s[0] if s.size else 0.0)))
    basis = u[:, :r]
    # fix phases so the basis is reproducible for identical input
    for j in range(r):
        col = basis[:, j]
        k = int(np.argmax(np.abs(col) > 0.5 / np.sqrt(len(col))))
        ph = col[k] / abs(col[k]) if col[k] != 0 else 1.0
        basis[:, j] = col / ph
    return Matrix.from_array(basis, tol=m.tol)


class Subspace:
    """A column-span in C^d held by its canonical basis matrix (d x k)."""

    __slots__ = ("ambient_dim", "basis", "field")

    def __init__(self, basis: Matrix, _canonical=False):
        self.ambient_dim = basis.rows
        self.field = basis.field
        if _canonical:
            self.basis = basis
        elif basis.field == EXACT:
            self.basis = _canonical_columns(basis)
        else:
            self.basis = _orthonormal_columns(basis)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def span(cls, vectors: Matrix) -> "Subspace":
        """Span of the columns of a d x m matrix."""
        return cls(vectors)

    @classmethod
    def span_rows(cls, d, rows, field=EXACT, tol=DEFAULT_TOL) -> "Subspace":
        """Span of a list of length-d vectors."""
        if not rows:
            return cls.zero(d, field, tol)
        if field == EXACT:
            return cls(Matrix.from_rows(rows).transpose())
        return cls(Matrix.from_array(np.array(rows, dtype=complex).T, tol=tol))

    @classmethod
    def zero(cls, d, field=EXACT, tol=DEFAULT_TOL) -> "Subspace":
        return cls(Matrix.zeros(d, 0, field, tol=tol), _canonical=True)

    @classmethod
    def full(cls, d, field=EXACT, tol=DEFAULT_TOL) -> "Subspace":
        return cls(Matrix.identity(d, field, tol=tol), _canonical=True)

    # -- basic queries ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.basis.cols

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        if self.field != other.field:
            raise BackendMismatch("subspaces have different backends")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            return False
        if self.field == EXACT:
            return self.basis == other.basis
        if self.dim != other.dim:
            return False
        if self.dim == 0:
            return True
        angles = principal_angles(self, other)
        return bool(np.max(angles) < self.basis.tol * 1e3)

    def __hash__(self):
        if self.field != EXACT:
            raise TypeError("float subspaces are unhashable")
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of C^{self.ambient_dim}, {self.field})"

    def contains_vector(self, v: Matrix) -> bool:
        if self.dim == 0:
            return v.is_zero()
        return self.basis.solve(v) is not None

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim == 0:
            return True
        if self.field == EXACT:
            return self.basis.solve(other.basis) is not None
        return sum_(self, other).dim == self.dim

    # -- lattice operations ------------------------------------------------------

    def orthocomplement(self) -> "Subspace":
        """Nullspace of the conjugate transpose of the basis."""
        return Subspace(self.basis.conj_transpose().nullspace())

    def to_float(self, tol=DEFAULT_TOL) -> "Subspace":
        if self.field == FLOAT:
            return self
        return Subspace(self.basis.to_float(tol))


def sum_(a: Subspace, b: Subspace) -> Subspace:
    """Span of the concatenated bases."""
    a._check(b)
    if a.dim == 0:
        return b
    if b.dim == 0:
        return a
    return Subspace(Matrix.hstack([a.basis, b.basis]))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Basis of a∩b via the nullspace of [B_a | -B_b], mapped through B_a."""
    a._check(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, a.field, a.basis.tol)
    ker = Matrix.hstack([a.basis, -b.basis]).nullspace()
    coeff = ker.take_rows(range(a.dim))
    return Subspace(a.basis @ coeff)


def image_under(t: Matrix, a: Subspace) -> Subspace:
    """Image of a under an invertible map t."""
    if t.cols != a.ambient_dim or t.rows != t.cols:
        raise DimensionMismatch("map shape does not match the ambient space")
    if t.field != a.field:
        raise BackendMismatch("map and subspace have different backends")
    if not t.is_invertible():
        raise SingularMatrixError("image_under requires an invertible map")
    if a.dim == 0:
        return Subspace.zero(a.ambient_dim, a.field, a.basis.tol)
    return Subspace(t @ a.basis)


def orthoprojection(a: Subspace) -> Matrix:
    """Orthogonal projection onto a (exact Gram solve, or U U* for float)."""
    if a.dim == 0:
        return Matrix.zeros(a.ambient_dim, a.ambient_dim, a.field, tol=a.basis.tol)
    b = a.basis
    if a.field == FLOAT:
        u = b.to_array()
        return Matrix.from_array(u @ u.conj().T, tol=b.tol)
    gram = b.conj_transpose() @ b
    return b @ gram.inverse() @ b.conj_transpose()


def principal_angles(a: Subspace, b: Subspace) -> np.ndarray:
    """Sorted principal angles between two subspaces (radians, float path).

    Accepts mixed backends; everything is converted to float here.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    if a.dim == 0 or b.dim == 0:
        return np.array([])
    ua = a.to_float().basis.to_array()
    ub = b.to_float().basis.to_array()
    g = ua.conj().T @ ub
    s = np.linalg.svd(g, compute_uv=False)
    s = np.clip(s, 0.0, 1.0)
    return np.sort(np.arccos(s))
