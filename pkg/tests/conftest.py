"""Shared fixtures: built surfaces are expensive, so they are
session-scoped and reused across test modules."""

import itertools

import pytest

from cfr.fields import GF
from cfr.surfaces import build_surface

PRIME_A = 32771
PRIME_B = 32779


@pytest.fixture(scope="session")
def s14():
    return build_surface(14, GF(PRIME_A), 7)


@pytest.fixture(scope="session")
def s26():
    return build_surface(26, GF(PRIME_A), 7)


@pytest.fixture(scope="session")
def s26_alt():
    return build_surface(26, GF(PRIME_B), 7)


@pytest.fixture(scope="session")
def s38():
    return build_surface(38, GF(PRIME_A), 7)


def assert_buchberger(gb):
    """Every S-polynomial of the basis must reduce to zero."""
    ring = gb.ring
    fld = ring.field
    elems = gb.elements
    for f, g in itertools.combinations(elems, 2):
        cf, ef = f.lead()
        cg, eg = g.lead()
        lcm = tuple(max(a, b) for a, b in zip(ef, eg))
        mf = ring.monomial(fld.inv(cf),
                           tuple(a - b for a, b in zip(lcm, ef)))
        mg = ring.monomial(fld.inv(cg),
                           tuple(a - b for a, b in zip(lcm, eg)))
        spoly = mf * f - mg * g
        assert gb.normal_form(spoly).is_zero(), "S-pair fails to reduce"
