"""Subspace lattice: span, intersection, sum, orthocomplement, images."""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relpos.errors import DimensionMismatch, SingularMatrixError
from relpos.gaussian import GQ, I, ONE
from relpos.matrix import Matrix
from relpos.subspace import (
    Subspace,
    image_under,
    intersect,
    orthoprojection,
    principal_angles,
    sum_,
)


def sp(d, *rows):
    return Subspace.span_rows(d, [list(r) for r in rows])


def rand_subspace(rng, d, k=None):
    if k is None:
        k = rng.randint(0, d)
    rows = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(k)]
    return Subspace.span_rows(d, rows)


def test_span_collinear_columns():
    s = sp(2, (1, 0), (2, 0))
    assert s.dim == 1
    assert s == sp(2, (1, 0))


def test_span_empty_is_zero():
    assert Subspace.zero(3).dim == 0


def test_span_rank_oracle():
    s = sp(3, (1, 1, 1), (1, 2, 3))
    assert s.dim == 2


def test_intersect_transverse_lines():
    assert intersect(sp(2, (1, 0)), sp(2, (0, 1))).is_zero()


def test_intersect_example8_pair():
    e1 = sp(3, (1, 0, 0), (0, 1, 0))
    e3 = sp(3, (1, 0, 0), (0, 1, 1))
    got = intersect(e1, e3)
    assert got == sp(3, (1, 0, 0))


def test_intersect_idempotent():
    rng = random.Random(3)
    for _ in range(5):
        a = rand_subspace(rng, 4)
        assert intersect(a, a) == a


def test_sum_examples():
    assert sum_(sp(2, (1, 0)), sp(2, (0, 1))).is_full()
    rng = random.Random(5)
    a = rand_subspace(rng, 4)
    assert sum_(a, Subspace.zero(4)) == a
    # E3+E2 for the Example 8 data has dimension 3
    e3 = sp(3, (1, 0, 0), (0, 1, 1))
    e2 = sp(3, (0, 0, 1))
    assert sum_(e3, e2).dim == 3


def test_orthocomplement_examples():
    assert sp(3, (1, 0, 0), (0, 1, 0)).orthocomplement() == sp(3, (0, 0, 1))
    got = sp(2, (1, 1)).orthocomplement()
    assert got.dim == 1
    v = got.basis
    # inner-product check: (1,1) . v = 0 under the Hermitian product
    ip = v.entry(0, 0).conj() + v.entry(1, 0).conj()
    assert not ip
    assert Subspace.zero(3).orthocomplement().is_full()


def test_orthocomplement_with_complex_entries():
    s = Subspace.span_rows(2, [[ONE, I]])
    perp = s.orthocomplement()
    ip = s.basis.conj_transpose() @ perp.basis
    assert ip.is_zero()


def test_image_under():
    t = Matrix.from_rows([[1, 1], [0, 1]])
    assert image_under(t, sp(2, (0, 1))) == sp(2, (1, 1))
    assert image_under(Matrix.identity(2), sp(2, (1, 1))) == sp(2, (1, 1))
    p = Matrix.from_rows([[0, 1], [1, 0]])
    assert image_under(p, sp(2, (1, 0))) == sp(2, (0, 1))
    with pytest.raises(SingularMatrixError):
        image_under(Matrix.from_rows([[1, 0], [0, 0]]), sp(2, (1, 0)))


@pytest.mark.parametrize("seed", range(15))
def test_modular_law_and_de_morgan(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 5)
    a = rand_subspace(rng, d)
    b = rand_subspace(rng, d)
    assert intersect(a, b).dim + sum_(a, b).dim == a.dim + b.dim
    assert a.orthocomplement().orthocomplement() == a
    assert sum_(a, b).orthocomplement() == intersect(a.orthocomplement(), b.orthocomplement())
    assert intersect(a, b).orthocomplement() == sum_(a.orthocomplement(), b.orthocomplement())
    assert sum_(a, b) == sum_(b, a)
    assert intersect(a, b) == intersect(b, a)


def test_orthoprojection_is_idempotent_hermitian():
    rng = random.Random(9)
    a = rand_subspace(rng, 4, 2)
    p = orthoprojection(a)
    assert p @ p == p
    assert p.conj_transpose() == p
    assert image_under(Matrix.identity(4), a).basis.cols == a.dim
    assert (p @ a.basis) == a.basis


def test_float_subspace_equality_by_angles():
    rng = np.random.default_rng(0)
    b = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
    s1 = Subspace.span(Matrix.from_array(b))
    s2 = Subspace.span(Matrix.from_array(b @ (rng.standard_normal((2, 2)) + np.eye(2) * 3)))
    assert s1 == s2
    s3 = Subspace.span(Matrix.from_array(rng.standard_normal((5, 2))))
    assert s1 != s3


def test_principal_angles_known():
    e = sp(2, (1, 0)).to_float()
    f = Subspace.span(Matrix.from_array(np.array([[np.cos(np.pi / 6)], [np.sin(np.pi / 6)]])))
    ang = principal_angles(e, f)
    assert abs(ang[0] - np.pi / 6) < 1e-12


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionMismatch):
        intersect(sp(2, (1, 0)), sp(3, (1, 0, 0)))
