"""Tests for the secant-cone / conic-congruence pipeline."""

import random
from types import SimpleNamespace

import pytest

from cfr.congruence import (cone_of_lines, cubic_singular_locus,
                            five_secant_conic, line_restriction,
                            random_nodal_cubic, random_smooth_cubic,
                            secant_cone, verify_congruence)
from cfr.fields import GF
from cfr.ideals import GenericityError, ideal
from cfr.maps import image_up_to_degree, monomials_of_degree, rational_map
from cfr.ring import ring_P
from cfr.surfaces import SurfaceInvariants
from cfr import rng as rngmod

FLD = GF(32771)


# -- line restriction -----------------------------------------------------

def fpow(a, e):
    r = FLD.one
    for _ in range(e):
        r = FLD.mul(r, a)
    return r


def random_form(R, d, rng, window=20):
    return R.from_terms([(FLD.of_int(rng.randint(-window, window)), exps)
                         for exps in monomials_of_degree(R.numVars, d)])


def test_line_restriction_identity():
    R = ring_P(FLD, 5, "x")
    rng = random.Random(11)
    for _ in range(5):
        G = random_form(R, 3, rng)
        p = [FLD.of_int(rng.randint(-20, 20)) for _ in range(6)]
        cs = line_restriction(G, p)
        assert len(cs) == 4
        for j, c in enumerate(cs):
            assert c.is_zero() or c.degree() == j
        x = [FLD.of_int(rng.randint(-20, 20)) for _ in range(6)]
        s = FLD.of_int(rng.randint(1, 20))
        t = FLD.of_int(rng.randint(1, 20))
        pt = [FLD.add(FLD.mul(s, a), FLD.mul(t, b)) for a, b in zip(p, x)]
        lhs = G.evaluate(pt)
        rhs = FLD.zero
        for j, c in enumerate(cs):
            term = FLD.mul(c.evaluate(x),
                           FLD.mul(fpow(s, 3 - j), fpow(t, j)))
            rhs = FLD.add(rhs, term)
        assert lhs == rhs


# -- secant cone oracles on the Veronese surface --------------------------

def veronese_ideal():
    R = ring_P(FLD, 2, "t")
    t0, t1, t2 = R.gens()
    phi = rational_map(R, [t0 * t0, t0 * t1, t0 * t2,
                           t1 * t1, t1 * t2, t2 * t2])
    return phi, image_up_to_degree(phi, 2)


def test_veronese_general_point_has_no_secants():
    # The Veronese surface has no secant lines through a general point of
    # P^5 (its secant variety is a hypersurface).
    _, I = veronese_ideal()
    p = [FLD.of_int(c) for c in [3, 1, 4, 1, 5, 9]]
    E = secant_cone(p, I)
    assert E.dim_degree() == (-1, 0)


def test_veronese_chord_point_gives_entry_plane():
    # Through a point ON a chord the secant cone is the 2-plane spanned by
    # the conic of the entry locus; it contains the chord itself.
    phi, I = veronese_ideal()
    a, b = [1, 2, -1], [2, -3, 1]
    va = [f.evaluate(a) for f in phi.forms]
    vb = [f.evaluate(b) for f in phi.forms]
    p = [FLD.add(u, v) for u, v in zip(va, vb)]
    E = secant_cone(p, I)
    assert E.dim_degree() == (2, 1)
    # every generator of E vanishes along the chord
    rng = random.Random(5)
    for _ in range(3):
        s = FLD.of_int(rng.randint(1, 50))
        t = FLD.of_int(rng.randint(1, 50))
        q = [FLD.add(FLD.mul(s, u), FLD.mul(t, v))
             for u, v in zip(va, vb)]
        for g in E.gens:
            assert FLD.is_zero(g.evaluate(q))


def test_cone_of_lines_on_quadric():
    # At a point of a smooth quadric surface in P^3 the cone of lines is
    # the pair of rulings: a curve of degree 2.
    R = ring_P(FLD, 3, "x")
    x0, x1, x2, x3 = R.gens()
    Q = x0 * x3 - x1 * x2
    z = [FLD.one, FLD.zero, FLD.zero, FLD.zero]
    C = cone_of_lines(z, [Q])
    assert C.dim_degree() == (1, 2)


# -- the full pipeline on the three surfaces ------------------------------

@pytest.fixture(scope="module")
def cert14(s14):
    return verify_congruence(s14, trials=1)[0]


@pytest.fixture(scope="module")
def cert26(s26):
    return verify_congruence(s26, trials=1)[0]


@pytest.fixture(scope="module")
def cert38(s38):
    return verify_congruence(s38, trials=1)[0]


def test_s14_conic(cert14):
    assert cert14.passed
    assert cert14.secantLineCount == 7
    assert cert14.linesInZ == 8
    assert cert14.extraLineDegree == 1
    assert tuple(cert14.conicDimDeg) == (1, 2)
    assert cert14.intersectionLength == 5
    assert cert14.capUsed == 2


def test_s26_conic(cert26):
    assert cert26.passed
    assert cert26.secantLineCount == 5
    assert cert26.linesInZ == 6
    assert cert26.extraLineDegree == 1
    assert tuple(cert26.conicDimDeg) == (1, 2)
    assert cert26.intersectionLength == 5
    assert cert26.capUsed == 2


def test_s38_conic(cert38):
    assert cert38.passed
    assert cert38.secantLineCount == 7
    assert cert38.linesInZ == 8
    assert cert38.extraLineDegree == 1
    assert tuple(cert38.conicDimDeg) == (1, 2)
    assert cert38.intersectionLength == 5
    # quadrics alone do not cut out Z for this surface; the pipeline must
    # record that it needed the cubic image equations
    assert cert38.capUsed == 3


def test_certificate_identity(cert14, cert26, cert38):
    # the cone of lines of Z at the vertex always consists of the secant
    # images plus exactly one extra line
    for cert in (cert14, cert26, cert38):
        assert cert.linesInZ == cert.secantLineCount + 1


def test_certificate_json(cert26):
    obj = cert26.to_json()
    assert obj["passed"] is True
    assert obj["conicDimDeg"] == [1, 2]
    assert set(obj["timings"]) >= {"secantCone", "coneOfLines", "conic"}


def test_two_prime_agreement(cert26, s26_alt):
    other = verify_congruence(s26_alt, trials=1)[0]
    summary = lambda c: (c.secantLineCount, c.linesInZ, c.extraLineDegree,
                         tuple(c.conicDimDeg), c.intersectionLength,
                         c.passed)
    assert summary(other) == summary(cert26)


# -- negative fixture: a surface lying on quadrics ------------------------

def scroll_stub():
    """A cubic scroll: the image of P^2 under the quadrics through one
    point.  It lies on quadrics, so it cannot support the congruence."""
    R = ring_P(FLD, 2, "t")
    t0, t1, t2 = R.gens()
    phi = rational_map(R, [t0 * t1, t0 * t2, t1 * t1, t1 * t2, t2 * t2])
    I = image_up_to_degree(phi, 2)
    inv = SurfaceInvariants(d=3, pi=0, K2=8, chi_top=4, chi_O=1, nu=0)
    return SimpleNamespace(field=FLD, ideal=I, invariants=inv,
                           recipe=SimpleNamespace(id=0), seed=0)


def test_negative_fixture_fails_pipeline():
    stub = scroll_stub()
    # the necessary numerical condition fails: it lies on quadrics
    assert stub.ideal.graded_piece_dim(2) > 0
    p = [FLD.of_int(c) for c in [2, 7, 1, 8, 3]]
    with pytest.raises(GenericityError):
        five_secant_conic(p, stub)


# -- cubic samplers -------------------------------------------------------

def test_smooth_and_nodal_cubic_s26(s26):
    rng = rngmod.stream(7, "test:smooth:26")
    F, _ = random_smooth_cubic(s26, rng)
    assert cubic_singular_locus(F).dim_degree() == (-1, 0)
    assert all(s26.ideal.contains_poly(F) for F in [F])

    rng = rngmod.stream(7, "test:nodal:26")
    F, _, q = random_nodal_cubic(s26, rng)
    sing = cubic_singular_locus(F)
    assert sing.dim_degree() == (0, 1)
    assert FLD.is_zero(F.evaluate(q))
