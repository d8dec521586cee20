from fractions import Fraction

from cfr.fields import GF
from cfr.hilbert import (dim_degree_from_leads, hilbert_function_from_leads,
                         hilbert_polynomial_from_leads)
from cfr.ideals import ideal
from cfr.ring import ring_P

FLD = GF(32771)


def test_dim_degree_monomial_fixtures():
    # coordinate subspaces in P^3
    assert dim_degree_from_leads([(1, 0, 0, 0)], 4) == (2, 1)
    assert dim_degree_from_leads([(1, 0, 0, 0), (0, 1, 0, 0)], 4) == (1, 1)
    # a quadric surface
    assert dim_degree_from_leads([(2, 0, 0, 0)], 4) == (2, 2)
    # the empty scheme
    assert dim_degree_from_leads(
        [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 4) \
        == (-1, 0)
    # unit ideal
    assert dim_degree_from_leads([(0, 0, 0, 0)], 4) == (-1, 0)


def test_mixed_support_pivot_terminates():
    # pairwise products: three coordinate points in P^2
    leads = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    assert dim_degree_from_leads(leads, 3) == (0, 3)


def test_twisted_cubic_dim_degree_and_hp():
    R = ring_P(FLD, 3, "x")
    x0, x1, x2, x3 = R.gens()
    I = ideal(R, [x0 * x2 - x1 * x1, x0 * x3 - x1 * x2,
                  x1 * x3 - x2 * x2])
    assert I.dim_degree() == (1, 3)
    leads = [g.lead()[1] for g in I.groebner().elements]
    # HP(t) = 3t + 1
    assert hilbert_polynomial_from_leads(leads, 4) == \
        [Fraction(1), Fraction(3)]


def test_hilbert_function_matches_graded_pieces():
    R = ring_P(FLD, 3, "x")
    x0, x1, x2, x3 = R.gens()
    I = ideal(R, [x0 * x2 - x1 * x1, x0 * x3 - x1 * x2,
                  x1 * x3 - x2 * x2])
    for d in range(1, 6):
        assert I.hilbert_function(d) == 3 * d + 1


def test_surface_hilbert_polynomial(s26):
    from cfr.surfaces import expected_hilbert_polynomial
    leads = [g.lead()[1] for g in s26.ideal.groebner().elements]
    hp = hilbert_polynomial_from_leads(leads, 6)
    assert hp == expected_hilbert_polynomial(s26.invariants)
