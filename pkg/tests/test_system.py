"""System-level operations: direct sums, permutations, Hom spaces, defect,
diagrams, predicates, operator-system recognition."""

import random
from fractions import Fraction

import pytest

from relpos.catalog import (
    build_example,
    build_gp3,
    build_gp4,
    jordan_block,
    operator_system,
    single_operator_system,
)
from relpos.errors import DimensionMismatch
from relpos.gaussian import GQ
from relpos.matrix import Matrix
from relpos.sampling import random_invertible, random_system
from relpos.subspace import Subspace
from relpos.system import (
    SubspaceSystem,
    defect,
    direct_sum,
    hom_dim,
    hom_space,
    intersection_diagram,
    is_bounded_operator_system,
    permute,
    predicates,
    zero_system,
)


def line_system(*patterns):
    """(C; ...) style one-dimensional systems: pattern 1 -> C, 0 -> 0."""
    return SubspaceSystem(
        1, [Subspace.span_rows(1, [[1]] if p else []) for p in patterns]
    )


def test_direct_sum_example_two():
    s = direct_sum(line_system(1, 0), line_system(0, 1))
    assert s.ambient_dim == 2
    assert s.dims() == (1, 1)
    assert s.subspaces[0] == Subspace.span_rows(2, [[1, 0]])
    assert s.subspaces[1] == Subspace.span_rows(2, [[0, 1]])


def test_direct_sum_with_zero_system():
    rng = random.Random(0)
    s = random_system(rng, 3, 2)
    z = zero_system(2)
    t = direct_sum(s, z)
    assert t.ambient_dim == 3
    assert t.subspaces == s.subspaces
    big = direct_sum(s, s)
    assert big.dims() == tuple(2 * k for k in s.dims())


def test_permute():
    s = line_system(1, 0, 0)
    assert permute(s, (1, 2, 3)) == s
    t = permute(s, (2, 1, 3))
    assert t.subspaces[1].dim == 1 and t.subspaces[0].dim == 0
    assert permute(t, (2, 1, 3)) == s


def test_hom_space_s9_endomorphisms_are_scalars():
    s9 = build_gp3(9)
    assert hom_dim(s9, s9) == 1


def test_hom_space_zero():
    assert hom_dim(line_system(1), line_system(0)) == 0


def test_hom_space_jordan_commutant():
    s = single_operator_system(jordan_block(2, GQ(0)))
    assert hom_dim(s, s) == 2


def test_hom_contains_identity_and_composes():
    rng = random.Random(1)
    s = random_system(rng, 3, 3)
    t = random_system(rng, 3, 3)
    u = random_system(rng, 2, 3)
    ident = Matrix.identity(3)
    ends = hom_space(s, s)
    cols = Matrix.hstack([b.vec() for b in ends.basis])
    assert cols.solve(ident.vec()) is not None
    for a in hom_space(t, u).basis:
        for b in hom_space(s, t).basis:
            comp = a @ b
            for e_i, f_i in zip(s.subspaces, u.subspaces):
                if e_i.dim:
                    assert f_i.contains(Subspace.span(comp @ e_i.basis))


def test_hom_dim_invariant_under_change_of_basis():
    rng = random.Random(2)
    s = random_system(rng, 3, 4)
    t = random_system(rng, 3, 4)
    g = random_invertible(rng, 3)
    s2 = s.apply(g)
    t2 = t.apply(g)
    assert hom_dim(s, t) == hom_dim(s2, t2)


def test_defect_examples():
    assert defect(build_gp4("S3(2k,-1)", 2)).defect == Fraction(-1)
    assert defect(build_gp4("S(2k+1,2)", 1)).defect == Fraction(2)
    assert defect(line_system(1, 1, 1, 1)).defect == Fraction(2)
    with pytest.raises(DimensionMismatch):
        defect(line_system(1, 1, 1))


def test_defect_additive_and_perp():
    rng = random.Random(3)
    for _ in range(5):
        s = random_system(rng, 3, 4)
        t = random_system(rng, 2, 4)
        assert defect(direct_sum(s, t)).defect == defect(s).defect + defect(t).defect
        assert defect(s.orthocomplement()).defect == -defect(s).defect


def test_intersection_diagram_operator_system_path():
    s = single_operator_system(jordan_block(2, GQ(0)))
    dia = intersection_diagram(s)
    assert dia.has_edge(4, 1) and dia.has_edge(1, 2) and dia.has_edge(2, 3)
    assert dia.connected


def test_intersection_diagram_all_full():
    dia = intersection_diagram(line_system(1, 1, 1, 1))
    assert not dia.edges
    assert not dia.connected


def test_predicates_operator_system():
    s = single_operator_system(jordan_block(3, GQ(1)))
    p = predicates(s)
    assert p.reduced_above and p.reduced_below
    assert p.projection_sum_invertible


def test_predicates_degenerate():
    p = predicates(line_system(1, 0, 0, 0))
    assert not p.reduced_above


def test_n_minus_1_property_catalog():
    # indecomposable with ambient dim >= 2: every n-1 subfamily meets in 0
    # and spans H
    s9 = build_gp3(9)
    assert predicates(s9).n_minus_1_property
    s7 = build_example(7)
    assert predicates(s7).n_minus_1_property


def test_reduced_above_implies_projection_sum_invertible():
    rng = random.Random(4)
    checked = 0
    for _ in range(100):
        s = random_system(rng, rng.randint(1, 4), 4)
        p = predicates(s)
        if p.reduced_above:
            checked += 1
            assert p.projection_sum_invertible
    assert checked >= 10


def test_is_bounded_operator_system_roundtrip():
    t = jordan_block(2, GQ(0))
    s = single_operator_system(t)
    real = is_bounded_operator_system(s)
    assert real is not None
    assert real.T == t
    assert real.S == Matrix.identity(2)
    rebuilt = operator_system(real.T, real.S)
    assert s.apply(real.change_of_basis) == rebuilt


def test_is_bounded_operator_system_rejects_gp_defect_two():
    s = build_gp4("S(2k+1,2)", 1)
    assert is_bounded_operator_system(s) is None


def test_is_bounded_operator_system_after_change_of_basis():
    rng = random.Random(5)
    t = Matrix.from_rows([[1, 2], [0, 1]])
    s = single_operator_system(t)
    g = random_invertible(rng, 4)
    moved = s.apply(g)
    real = is_bounded_operator_system(moved)
    assert real is not None
    rebuilt = operator_system(real.T, real.S)
    assert moved.apply(real.change_of_basis) == rebuilt
