"""Symbol-level Fredholm theory, fractional defects, and the exotic lab."""

import random
from fractions import Fraction

import numpy as np
import pytest

from relpos.errors import DegenerateSymbolError, DimensionMismatch, ParseError
from relpos.gaussian import GQ, ONE
from relpos.matrix import Matrix
from relpos.toeplitz import (
    LaurentSymbol,
    exotic_hom_dim,
    exotic_report,
    fredholm_index,
    hom_dimension_decay,
    kernel_dims,
    region_classify,
    shift_matrix,
    single_operator_defect,
    single_operator_defect_report,
    toeplitz_idempotent_check,
    truncate_exotic,
    upper_toeplitz,
)


def scalar(coeffs):
    return LaurentSymbol.scalar(coeffs)


def block_v_symbol(n):
    sub = Matrix.exact(
        n, n, [ONE if i == j + 1 else GQ(0) for i in range(n) for j in range(n)]
    )
    return LaurentSymbol.make(n, {1: Matrix.identity(n), 0: sub})


def test_winding_shift():
    rep = fredholm_index(scalar({1: 1}))
    assert rep.fredholm and rep.winding == 1 and rep.index == -1


def test_winding_outside_disk():
    rep = fredholm_index(scalar({1: 1, 0: -2}))
    assert rep.fredholm and rep.index == 0


def test_winding_block_v():
    for n in (1, 2, 4, 6):
        rep = fredholm_index(block_v_symbol(n))
        assert rep.fredholm and rep.index == -n


def test_non_fredholm_on_circle():
    rep = fredholm_index(scalar({1: 1, 0: -1}))
    assert not rep.fredholm


def test_degenerate_symbol_rejected():
    with pytest.raises(DegenerateSymbolError):
        LaurentSymbol.scalar({0: 0})


def test_kernel_dims_examples():
    assert kernel_dims(scalar({1: 1, 0: -1})) == (0, 0, "exact")
    assert kernel_dims(scalar({1: 1})) == (0, 1, "exact")
    sym = scalar({2: 1, 1: GQ(Fraction(-7, 2)), 0: GQ(Fraction(3, 2))})
    assert kernel_dims(sym) == (0, 1, "exact")


def test_kernel_dims_index_consistency():
    # for circle-free symbols, winding index equals ker - coker
    rng = random.Random(3)
    for coeffs in ({1: 1, 0: GQ(Fraction(-1, 3))}, {1: 1, 0: 3},
                   {2: 1, 0: GQ(Fraction(1, 4))}, {-1: 1, 0: 2}):
        sym = scalar(coeffs)
        rep = fredholm_index(sym)
        ker, coker, cert = kernel_dims(sym)
        if rep.fredholm:
            assert rep.index == ker - coker, coeffs


def test_single_operator_defects():
    assert single_operator_defect(scalar({1: 1})) == Fraction(-1, 3)
    assert single_operator_defect(scalar({1: 1, 0: GQ(Fraction(1, 2))})) == Fraction(-2, 3)
    for n in range(1, 7):
        assert single_operator_defect(block_v_symbol(n)) == Fraction(-n, 3)


def test_defect_adjoint_antisymmetry():
    for coeffs in ({1: 1}, {1: 1, 0: GQ(Fraction(1, 2))}, {2: 1, 0: GQ(3)}):
        sym = scalar(coeffs)
        assert single_operator_defect(sym.adjoint()) == -single_operator_defect(sym)
    for n in (1, 3):
        sym = block_v_symbol(n)
        assert single_operator_defect(sym.adjoint()) == -single_operator_defect(sym)


def test_region_classify():
    assert region_classify(GQ(Fraction(1, 2))) == Fraction(-2, 3)
    assert region_classify(GQ(Fraction(-1, 2))) == Fraction(-1, 3)
    assert region_classify(GQ(3)) == Fraction(0)
    with pytest.raises(DimensionMismatch):
        region_classify(GQ(1))
    # |alpha - 1| = 1 exactly: a boundary point by the stated precondition
    with pytest.raises(DimensionMismatch):
        region_classify(GQ(2))


def test_region_locally_constant():
    eps = GQ(Fraction(1, 1000))
    for alpha in (GQ(Fraction(1, 2)), GQ(Fraction(-1, 2)), GQ(3)):
        base = region_classify(alpha)
        assert region_classify(alpha + eps) == base
        assert region_classify(alpha - eps) == base


def test_symbol_text_roundtrip():
    sym = LaurentSymbol.make(
        2,
        {
            -1: Matrix.from_rows([[1, 0], [GQ(0, 1), 2]]),
            0: Matrix.from_rows([[GQ(Fraction(1, 2)), 0], [0, 1]]),
        },
    )
    text = sym.text()
    back = LaurentSymbol.parse(text)
    assert back == sym
    assert LaurentSymbol.parse("block=1; k:1=[[1]]") == scalar({1: 1})
    with pytest.raises(ParseError):
        LaurentSymbol.parse("k:1=[[1]]")


def test_shift_matrix_truncation_structure():
    s = shift_matrix(3)
    assert s.entry(1, 0) == GQ(1) and s.entry(2, 1) == GQ(1)
    assert s.entry(0, 0) == GQ(0)
    assert (s @ s @ s).is_zero()


def test_truncate_exotic_shapes():
    s = truncate_exotic(GQ(2), 8)
    assert s.ambient_dim == 32
    assert s.dims() == (16, 16, 17, 16)


def test_exotic_exact_intersections():
    from relpos.subspace import intersect

    s = truncate_exotic(GQ(2), 8)
    e1, e2, e3, e4 = s.subspaces
    m13 = intersect(e1, e3)
    assert m13.dim == 1
    v = m13.basis
    # the intersection is the line through (e_1, 0, 0, 0)
    assert v.entry(0, 0) == GQ(1)
    assert all(not v.entry(i, 0) for i in range(1, 32))
    m23 = intersect(e2, e3)
    assert m23.dim == 1
    assert m23.basis.entry(24, 0) == GQ(1)  # (0,0,0,e_1) at offset 3N


def test_exotic_report_values():
    rep = exotic_report(GQ(2), 16, 1e-6)
    assert rep.pair_intersections[(1, 3)] == 1
    assert rep.pair_intersections[(2, 3)] == 1
    assert rep.pair_angles[(3, 4)] < 1e-6
    for pair in ((1, 2), (1, 4), (2, 4)):
        assert rep.pair_angles[pair] > 0.3
    assert rep.not_operator_system
    assert rep.defect_estimate == Fraction(1)


def test_exotic_report_rejects_small_gamma():
    with pytest.raises(DimensionMismatch):
        exotic_report(GQ(1), 8)


def test_toeplitz_idempotent_law_random():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 6)
        row = [GQ(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(n)]
        chk = toeplitz_idempotent_check(row)
        assert chk.lemma_holds


def test_toeplitz_idempotent_trivial_cases():
    assert toeplitz_idempotent_check([0, 0, 0]).is_idempotent
    assert toeplitz_idempotent_check([1, 0, 0]).is_idempotent
    chk = toeplitz_idempotent_check([1, 5, 0])
    assert not chk.is_idempotent
    t = upper_toeplitz([1, 3, 2], 3)
    assert t.entry(0, 1) == GQ(3) and t.entry(1, 2) == GQ(3)


def test_exotic_hom_dims_constant_one():
    dims = hom_dimension_decay(GQ(2), GQ(3), sizes=(4, 8, 16))
    assert dims == [1, 1, 1]
    assert exotic_hom_dim(GQ(2), GQ(2), 8) == 1
