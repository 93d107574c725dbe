"""Two-subspace numerics: the five-part canonical decomposition, principal
angles, and the classification of two-subspace systems.

Angles come from singular values of the cross-Gram matrix, clipped to [0,1]
before arccos so floating drift cannot produce NaN.  Corner membership
(angle 0 or pi/2) is decided against `corner_tol` on the cosine scale."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .matrix import EXACT, Matrix
from .subspace import Subspace, intersect, principal_angles, sum_
from .system import SubspaceSystem

CORNER_TOL = 1e-8


def _orthobasis(sub: Subspace) -> np.ndarray:
    return sub.to_float().basis.to_array()


def _complement_within(cols: np.ndarray, d: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the given columns."""
    if cols.size == 0:
        return np.eye(d, dtype=complex)
    q, _ = np.linalg.qr(np.hstack([cols, np.eye(d, dtype=complex)]))
    # the first rank(cols) columns of q span cols; take the rest
    r = cols.shape[1]
    return q[:, r:d]


def _mgs(cols: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass."""
    if cols.size == 0:
        return cols
    q = cols.astype(complex).copy()
    n = q.shape[1]
    for j in range(n):
        for _ in range(2):
            for i in range(j):
                q[:, j] -= (q[:, i].conj() @ q[:, j]) * q[:, i]
        nrm = np.linalg.norm(q[:, j])
        q[:, j] /= nrm
    return q


@dataclass
class TwoSubspaceDecomposition:
    """Five-part splitting of the ambient space for a pair (E, F).

    part_dims maps the five parts to dimensions; the generic part counts the
    K+K block as 2*len(angles)... nope: 'generic' is the K-dimension (pairs).
    """

    part_dims: dict
    angles: np.ndarray
    unitary: np.ndarray
    residual: float

    @property
    def generic_dim(self) -> int:
        return self.part_dims["generic"]


def halmos_decompose(e: Subspace, f: Subspace, corner_tol: float = CORNER_TOL) -> TwoSubspaceDecomposition:
    """Split C^d into (E∩F) + (K+K generic) + (E∩F⊥) + (E⊥∩F) + (E⊥∩F⊥) with
    a unitary carrying both projections into the canonical block form."""
    if e.ambient_dim != f.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    d = e.ambient_dim
    ue = _orthobasis(e)
    uf = _orthobasis(f)
    p, q = ue.shape[1], uf.shape[1]
    m = ue.conj().T @ uf
    if min(p, q) == 0:
        w = np.eye(p, dtype=complex)
        v = np.eye(q, dtype=complex)
        sig = np.zeros(0)
    else:
        w, sig, vh = np.linalg.svd(m)
        v = vh.conj().T
    pe = ue @ w  # principal directions in E
    qf = uf @ v  # principal directions in F
    nang = len(sig)
    sig = np.clip(sig, 0.0, 1.0)

    ef_cols = []       # E ∩ F
    gen_e = []         # generic E-directions
    gen_w = []         # generic companions (F-direction minus cosine part)
    gen_cos = []
    e_only = []        # E ∩ F⊥
    f_only = []        # E⊥ ∩ F
    for i in range(nang):
        c = sig[i]
        if c >= 1.0 - corner_tol:
            ef_cols.append(pe[:, i])
        elif c <= corner_tol:
            e_only.append(pe[:, i])
            f_only.append(qf[:, i])
        else:
            s = float(np.sqrt(1.0 - c * c))
            wvec = (qf[:, i] - c * pe[:, i]) / s
            gen_e.append(pe[:, i])
            gen_w.append(wvec)
            gen_cos.append(c)
    # extra directions beyond min(p, q) are orthogonal to the other space
    for i in range(nang, p):
        e_only.append(pe[:, i])
    for i in range(nang, q):
        f_only.append(qf[:, i])

    def col(ls):
        return np.array(ls, dtype=complex).T if ls else np.zeros((d, 0), dtype=complex)

    blocks = [col(ef_cols), col(gen_e), col(gen_w), col(e_only), col(f_only)]
    used = np.hstack(blocks) if any(b.size for b in blocks) else np.zeros((d, 0), dtype=complex)
    rest = _complement_within(used, d)
    unitary = _mgs(np.hstack([used, rest]))

    a = len(ef_cols)
    g = len(gen_e)
    b = len(e_only)
    c_ = len(f_only)
    z = d - (a + 2 * g + b + c_)
    part_dims = {
        "intersection": a,
        "generic": g,
        "e_only": b,
        "f_only": c_,
        "perp_both": z,
    }
    angles = np.sort(np.arccos(np.clip(np.array(gen_cos), 0.0, 1.0)))

    # reconstruction check against the canonical block model
    proj_e = ue @ ue.conj().T
    proj_f = uf @ uf.conj().T
    model_e = np.zeros((d, d), dtype=complex)
    model_f = np.zeros((d, d), dtype=complex)
    model_e[:a, :a] = np.eye(a)
    model_f[:a, :a] = np.eye(a)
    # generic blocks keep the original (unsorted) order used in the unitary
    cos_v = np.array(gen_cos)
    sin_v = np.sqrt(1.0 - cos_v**2)
    i0 = a
    model_e[i0 : i0 + g, i0 : i0 + g] = np.eye(g)
    cc = np.diag(cos_v**2)
    cs = np.diag(cos_v * sin_v)
    ss = np.diag(sin_v**2)
    model_f[i0 : i0 + g, i0 : i0 + g] = cc
    model_f[i0 : i0 + g, i0 + g : i0 + 2 * g] = cs
    model_f[i0 + g : i0 + 2 * g, i0 : i0 + g] = cs
    model_f[i0 + g : i0 + 2 * g, i0 + g : i0 + 2 * g] = ss
    i1 = a + 2 * g
    model_e[i1 : i1 + b, i1 : i1 + b] = np.eye(b)
    model_f[i1 + b : i1 + b + c_, i1 + b : i1 + b + c_] = np.eye(c_)
    ue_t = unitary.conj().T @ proj_e @ unitary
    uf_t = unitary.conj().T @ proj_f @ unitary
    residual = float(
        max(np.linalg.norm(ue_t - model_e), np.linalg.norm(uf_t - model_f))
    )
    return TwoSubspaceDecomposition(
        part_dims=part_dims, angles=angles, unitary=unitary, residual=residual
    )


@dataclass
class TwoSystemClassification:
    """Multiplicities over the four one-dimensional types plus the generic
    angle list; type keys name the subspace pattern."""

    multiplicities: dict
    angles: np.ndarray

    def total_dim(self) -> int:
        """Each generic pair is already absorbed as one (C;C,0) + one (C;0,C)."""
        return sum(self.multiplicities.values())


def classify_two_system(s: SubspaceSystem) -> TwoSystemClassification:
    """Corner multiplicities and generic angles of a two-subspace system.

    Exact systems get exact corner dimensions (lattice operations); each
    generic angle block itself splits into (C;C,0) + (C;0,C) under plain
    isomorphism, so those multiplicities absorb the generic count."""
    if s.n != 2:
        raise DimensionMismatch("classify_two_system needs exactly two subspaces")
    e, f = s.subspaces
    d = s.ambient_dim
    if s.field == EXACT:
        ep = e.orthocomplement()
        fp = f.orthocomplement()
        a = intersect(e, f).dim
        b = intersect(e, fp).dim
        c = intersect(ep, f).dim
        z = intersect(ep, fp).dim
        g2 = d - (a + b + c + z)
        if g2 % 2:
            raise DimensionMismatch("generic part has odd dimension; bad lattice data")
        g = g2 // 2
        if g:
            dec = halmos_decompose(e, f)
            angles = dec.angles
        else:
            angles = np.array([])
    else:
        dec = halmos_decompose(e, f)
        a = dec.part_dims["intersection"]
        b = dec.part_dims["e_only"]
        c = dec.part_dims["f_only"]
        z = dec.part_dims["perp_both"]
        g = dec.part_dims["generic"]
        angles = dec.angles
    return TwoSystemClassification(
        multiplicities={
            "(C;C,C)": a,
            "(C;C,0)": b + g,
            "(C;0,C)": c + g,
            "(C;0,0)": z,
        },
        angles=angles,
    )
