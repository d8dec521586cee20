"""Tests for conormal-module presentations and normal-sheaf sections."""

import pytest

from cfr.congruence import random_smooth_cubic
from cfr.fields import GF
from cfr.ideals import ideal
from cfr.modcoh import (conormal_presentation, h0_normal,
                        hom_into_A_degree, standard_monomials)
from cfr.ring import ring_P
from cfr import rng as rngmod

FLD = GF(32771)


def ci_two_quadrics():
    R = ring_P(FLD, 3, "x")
    x0, x1, x2, x3 = R.gens()
    return ideal(R, [x0 * x0 + x1 * x3, x1 * x2 - x3 * x3])


def test_standard_monomials_count():
    I = ci_two_quadrics()
    gb = I.groebner()
    # dim (R/I)_2 = 10 - 2 for a complete intersection of two quadrics
    assert len(standard_monomials(gb, 2)) == 8
    assert len(standard_monomials(gb, 0)) == 1


def test_ci_conormal_is_free():
    # For a complete intersection the conormal module I/I^2 is free over
    # A = R/I on the generators, so Hom_A(M, A)_0 = 2 * dim A_2.
    I = ci_two_quadrics()
    pres = conormal_presentation(I)
    assert pres.gen_degrees == [2, 2]
    assert pres.is_free_presentation()
    assert hom_into_A_degree(pres, 0) == 16


def test_h0_normal_in_p5(s14):
    assert h0_normal(s14.ideal) == 49


def test_h0_normal_in_cubic_s14(s14):
    rng = rngmod.stream(s14.seed, "test:modcoh:14")
    F, _ = random_smooth_cubic(s14, rng)
    assert h0_normal(s14.ideal, F) == 7


def test_h0_normal_in_cubic_s26(s26, s26_alt):
    rng = rngmod.stream(s26.seed, "test:modcoh:26")
    F, _ = random_smooth_cubic(s26, rng)
    assert h0_normal(s26.ideal, F) == 1
    # two-prime agreement
    rng = rngmod.stream(s26_alt.seed, "test:modcoh:26b")
    G, _ = random_smooth_cubic(s26_alt, rng)
    assert h0_normal(s26_alt.ideal, G) == 1
