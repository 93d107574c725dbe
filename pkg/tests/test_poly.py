"""Polynomial arithmetic and certified factoring over Q(i)."""

import random
from fractions import Fraction

import pytest

from relpos.errors import DegreeBoundExceeded
from relpos.gaussian import GQ, I, ONE
from relpos.poly import (
    Polynomial,
    coprime_split,
    factor_over_gaussian_rationals,
    fraction_sqrt,
    gq_sqrt,
)


def poly_from_roots(roots):
    p = Polynomial([ONE])
    for r in roots:
        p = p * Polynomial([-r, ONE])
    return p


def test_divmod_and_gcd():
    p = poly_from_roots([GQ(1), GQ(2), GQ(3)])
    q = poly_from_roots([GQ(2), GQ(5)])
    g = p.gcd(q)
    assert g == Polynomial([-2, 1])
    quo, rem = p.divmod(Polynomial([-2, 1]))
    assert rem.is_zero()
    assert quo == poly_from_roots([GQ(1), GQ(3)])


def test_xgcd_bezout():
    p = poly_from_roots([GQ(1), GQ(1), GQ(2)])
    f = Polynomial([-1, 1]) * Polynomial([-1, 1])
    g = Polynomial([-2, 1])
    gg, u, v = f.xgcd(g)
    assert gg == Polynomial([ONE])
    assert (u * f + v * g) == Polynomial([ONE])


def test_factor_z2_minus_1():
    rep = factor_over_gaussian_rationals(Polynomial([-1, 0, 1]))
    assert rep.remainder is None
    roots = sorted(str(r) for r, _ in rep.certified_roots())
    assert roots == ["-1", "1"]
    assert rep.product() == Polynomial([-1, 0, 1])


def test_factor_z2_plus_1_splits_over_qi():
    rep = factor_over_gaussian_rationals(Polynomial([1, 0, 1]))
    assert rep.remainder is None
    roots = {r for r, _ in rep.certified_roots()}
    assert roots == {I, -I}


def test_factor_z2_minus_2_is_uncertified_remainder():
    p = Polynomial([-2, 0, 1])
    rep = factor_over_gaussian_rationals(p)
    assert not rep.certified_roots()
    # the quadratic is certified irreducible over Q(i) via the discriminant
    assert rep.remainder is None or rep.remainder == p.monic()
    assert rep.product() == p
    # either way it must not be silently split
    assert all(f.degree != 1 for f, _ in rep.factors)


def test_degree_bound():
    p = Polynomial([1] + [0] * 30 + [1])
    with pytest.raises(DegreeBoundExceeded):
        factor_over_gaussian_rationals(p)


@pytest.mark.parametrize("seed", range(12))
def test_refactor_product_identity(seed):
    rng = random.Random(seed)
    roots = [
        GQ(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
           Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        for _ in range(rng.randint(1, 5))
    ]
    mult = [rng.randint(1, 2) for _ in roots]
    p = Polynomial([ONE])
    for r, m in zip(roots, mult):
        for _ in range(m):
            p = p * Polynomial([-r, ONE])
    p = p * GQ(rng.randint(1, 5))
    rep = factor_over_gaussian_rationals(p)
    assert rep.product() == p
    assert rep.remainder is None
    got = {}
    for r, m in rep.certified_roots():
        got[(r.re, r.im)] = m
    want = {}
    for r, m in zip(roots, mult):
        want[(r.re, r.im)] = want.get((r.re, r.im), 0) + m
    assert got == want


def test_coprime_split():
    p = poly_from_roots([GQ(0), GQ(0), GQ(1)])
    split = coprime_split(p)
    assert split is not None
    f, g = split
    assert (f * g).monic() == p.monic()
    assert f.gcd(g).degree == 0


def test_coprime_split_none_for_power():
    p = poly_from_roots([GQ(2), GQ(2), GQ(2)])
    assert coprime_split(p) is None


def test_coprime_split_against_uncertified_remainder():
    # z^2 (z^2 - 2): the z^2-2 part stays unsplit but separates from z^2
    p = Polynomial([0, 0, 1]) * Polynomial([-2, 0, 1])
    split = coprime_split(p)
    assert split is not None
    f, g = split
    assert (f * g) == p.monic()


def test_gq_sqrt():
    assert gq_sqrt(GQ(4)) == GQ(2) or gq_sqrt(GQ(4)) == GQ(-2)
    assert gq_sqrt(GQ(0, 2)) is not None  # 2i = (1+i)^2
    assert gq_sqrt(GQ(2)) is None
    assert gq_sqrt(GQ(-1)) in (I, -I)
    assert fraction_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert fraction_sqrt(Fraction(2)) is None


def test_squarefree_decomposition():
    p = poly_from_roots([GQ(1), GQ(1), GQ(2)])
    sf = p.squarefree_decomposition()
    assert (Polynomial([-2, 1]), 1) in sf
    assert (Polynomial([-1, 1]), 2) in sf
