import random

import pytest

from cfr.fields import GF
from cfr.ideals import GenericityError, ideal
from cfr.ring import ring_P

FLD = GF(32771)


def fermat_cubic():
    R = ring_P(FLD, 5, "x")
    f = R.zero()
    for i in range(6):
        v = R.var(i)
        f = f + v * v * v
    return ideal(R, [f])


def test_graded_piece_dims():
    R = ring_P(FLD, 2, "x")
    x, y, z = R.gens()
    I = ideal(R, [x * x, x * y])
    assert I.graded_piece_dim(1) == 0
    assert I.graded_piece_dim(2) == 2
    # degree 3: x^2*{x,y,z} + xy*{y,z} -> x*quadrics + ... = 5 monomial
    # multiples {x^3, x^2 y, x^2 z, x y^2, x y z}
    assert I.graded_piece_dim(3) == 5


def test_singular_locus_smooth_hypersurface():
    I = fermat_cubic()
    sing = I.singular_locus(codim=1)
    assert sing.dim_degree() == (-1, 0)


def test_singular_locus_nodal_quadric():
    R = ring_P(FLD, 3, "x")
    x0, x1, x2, x3 = R.gens()
    cone = ideal(R, [x0 * x1 - x2 * x2])    # rank-3 quadric: one singular pt
    assert cone.singular_locus(codim=1).dim_degree() == (0, 1)


def test_singular_locus_probe_matches_exact():
    rng = random.Random(11)
    R = ring_P(FLD, 3, "x")
    x0, x1, x2, x3 = R.gens()
    cone = ideal(R, [x0 * x1 - x2 * x2])
    probe = cone.singular_locus_probe(codim=1, rng=rng)
    assert probe.dim_degree() == (0, 1)


def test_unit_and_zero_ideals():
    R = ring_P(FLD, 2, "x")
    assert ideal(R, [R.one()]).is_unit()
    assert ideal(R, []).is_zero()
    assert ideal(R, []).dim_degree() == (2, 1)
