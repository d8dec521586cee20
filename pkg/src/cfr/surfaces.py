"""Construction of the three surface families in P^5 from plane linear
systems and projections, plus their numerical invariants.

Each surface is the image of P^2 under the system of plane curves of a
fixed degree through a fixed configuration of general base points,
followed by zero or more linear projections.  The homogeneous ideal is
recovered by interpolation (kernel of the monomial-expansion matrix up
to degree 3) and certified a posteriori: generator profile, projective
dimension and degree, and the full Hilbert polynomial must all match
the expected values, otherwise the random choices are redrawn."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Optional

from .fields import FieldDesc
from .hilbert import hilbert_polynomial_from_leads
from .ideals import GenericityError, IdealHandle, ideal
from .linalg import kernel_basis
from .maps import (COEFF_WINDOW, RationalMapRec, monomials_of_degree,
                   rational_map)
from .orders import GREVLEX
from .ring import Poly, RingCtx, ring_P
from . import rng as rngmod

BUILD_RETRIES = 5

# projection step kinds
FROM_GENERAL_POINT = "FromGeneralPoint"
FROM_POINT_ON_SECANT = "FromPointOnSecant"


@dataclass(frozen=True)
class SurfaceInvariants:
    d: int        # degree of the embedded surface
    pi: int       # sectional genus
    K2: int       # canonical self-intersection of the smooth model
    chi_top: int  # topological Euler number of the smooth model
    chi_O: int    # holomorphic Euler characteristic
    nu: int       # node count of the embedded surface

    @property
    def HK(self) -> int:
        """H.K by adjunction."""
        return 2 * self.pi - 2 - self.d


@dataclass(frozen=True)
class SurfaceRecipe:
    id: int                      # discriminant label: 14, 26 or 38
    plane_degree: int
    base_points: tuple           # ((multiplicity, count), ...)
    projection_steps: tuple      # step kind strings
    invariants: SurfaceInvariants
    system_dim: int              # expected size of the plane linear system
    cubic_count: int             # expected number of cubic generators in P^5
    stage_profiles: tuple        # expected generator profile after each step


RECIPES = {
    14: SurfaceRecipe(
        id=14, plane_degree=4, base_points=((1, 8),),
        projection_steps=(FROM_GENERAL_POINT,),
        invariants=SurfaceInvariants(d=8, pi=3, K2=1, chi_top=11,
                                     chi_O=1, nu=0),
        system_dim=7, cubic_count=13,
        stage_profiles=({2: 7},)),
    26: SurfaceRecipe(
        id=26, plane_degree=3, base_points=((1, 2),),
        projection_steps=(FROM_POINT_ON_SECANT, FROM_GENERAL_POINT),
        invariants=SurfaceInvariants(d=7, pi=1, K2=7, chi_top=5,
                                     chi_O=1, nu=1),
        system_dim=8, cubic_count=14,
        stage_profiles=(None, {2: 7, 3: 1})),
    38: SurfaceRecipe(
        id=38, plane_degree=10, base_points=((3, 10),),
        projection_steps=(),
        invariants=SurfaceInvariants(d=10, pi=6, K2=-1, chi_top=13,
                                     chi_O=1, nu=0),
        system_dim=6, cubic_count=10,
        stage_profiles=()),
}


@dataclass
class StageRecord:
    """An intermediate projection stage: the map to P^k and the
    interpolated ideal of the image, with its generator profile."""
    param: RationalMapRec
    ideal: Optional[IdealHandle]
    profile: Optional[dict]


@dataclass
class SurfaceInstance:
    recipe: SurfaceRecipe
    field: FieldDesc
    seed: int
    param: RationalMapRec          # f: P^2 --> P^5
    ideal: IdealHandle             # saturated homogeneous ideal of S
    generator_profile: dict        # degree -> generator count
    stages: list                   # StageRecord per projection step
    plane_points: list             # base point coordinate vectors

    @property
    def invariants(self) -> SurfaceInvariants:
        return self.recipe.invariants

    def to_json(self) -> dict:
        inv = self.invariants
        return {
            "id": self.recipe.id,
            "field": {"char": self.field.characteristic},
            "seed": self.seed,
            "vars": list(self.ideal.ring.varNames),
            "parameterization": [f.to_json() for f in self.param.forms],
            "generators": [g.to_json() for g in self.ideal.gens],
            "generatorProfile": {str(k): v
                                 for k, v in self.generator_profile.items()},
            "invariants": {
                "degree": inv.d, "sectionalGenus": inv.pi, "K2": inv.K2,
                "chiTop": inv.chi_top, "chiO": inv.chi_O, "nodes": inv.nu,
                "apparentDoublePoints": apparent_double_points(inv),
                "selfIntersectionInCubic": self_intersection_in_cubic(inv),
                "discriminant": discriminant(
                    inv.d, self_intersection_in_cubic(inv)),
            },
        }

    @staticmethod
    def from_json(obj: dict) -> "SurfaceInstance":
        recipe = RECIPES[obj["id"]]
        fld = FieldDesc(obj["field"]["char"])
        source = ring_P(fld, 2, "x")
        target = RingCtx(fld, list(obj["vars"]), GREVLEX)
        forms = [Poly.from_json(f, source) for f in obj["parameterization"]]
        param = rational_map(source, forms, target)
        gens = [Poly.from_json(g, target) for g in obj["generators"]]
        I = ideal(target, gens)
        profile = {int(k): v for k, v in obj["generatorProfile"].items()}
        return SurfaceInstance(recipe, fld, obj["seed"], param, I,
                               profile, [], [])


# -- numerical invariants -------------------------------------------------

def apparent_double_points(inv: SurfaceInvariants) -> int:
    """Number of secant lines through a general point of P^5: the double
    point formula, with each node of the embedded surface absorbing one
    apparent double point."""
    smooth = (inv.d * (inv.d - 5)) // 2 - 5 * (inv.pi - 1) \
        + 6 * inv.chi_O - inv.K2
    return smooth - inv.nu


def self_intersection_in_cubic(inv: SurfaceInvariants) -> int:
    """Self-intersection S.S of the surface class inside a smooth cubic
    fourfold containing it."""
    return 6 * inv.d + 3 * inv.HK + inv.K2 - inv.chi_top + 2 * inv.nu


def discriminant(d_surface: int, S2: int) -> int:
    return 3 * S2 - d_surface * d_surface


def is_admissible(d: int) -> bool:
    if d <= 6 or d % 2 or d % 4 == 0 or d % 9 == 0:
        return False
    m, p = d, 2
    while p * p <= m:
        if m % p:
            p += 1
            continue
        while m % p == 0:
            m //= p
        if p % 2 and p % 3 == 2:
            return False
        p += 1
    if m > 1 and m % 2 and m % 3 == 2:
        return False
    return True


def expected_hilbert_polynomial(inv: SurfaceInvariants):
    """[c0, c1, c2] of the Hilbert polynomial of the embedded surface:
    chi(O_S(t)) with each node lowering the constant term by one."""
    half_d = Fraction(inv.d, 2)
    return [Fraction(inv.chi_O - inv.nu),
            half_d + 1 - inv.pi,
            half_d]


# -- plane linear systems -------------------------------------------------

def linear_system(plane: RingCtx, delta: int, points) -> list:
    """Basis of plane forms of degree delta vanishing to the prescribed
    multiplicities: multiplicity m imposes all partials of order < m.

    points: list of (coordinate vector, multiplicity)."""
    fld = plane.field
    monoms = monomials_of_degree(3, delta)
    rows = []
    for p, mult in points:
        for alpha in _orders_below(mult):
            row = []
            for e in monoms:
                c = fld.one
                ok = True
                for i in range(3):
                    a = alpha[i]
                    if e[i] < a:
                        ok = False
                        break
                    fac = 1
                    for k in range(a):
                        fac *= e[i] - k
                    c = fld.mul(c, fld.of_int(fac))
                    c = fld.mul(c, _pow(fld, p[i], e[i] - a))
                row.append(c if ok else fld.zero)
            rows.append(row)
    kern = kernel_basis(rows, fld.characteristic, len(monoms))
    out = []
    for vec in kern:
        out.append(plane.from_terms(
            [(vec[j], monoms[j]) for j in range(len(monoms))
             if not fld.is_zero(vec[j])]))
    return out


def _orders_below(mult: int):
    """Partial-derivative multi-indices of total order < mult, in P^2."""
    out = []
    for total in range(mult):
        for a in range(total + 1):
            for b in range(total - a + 1):
                out.append((a, b, total - a - b))
    return out


def _pow(fld, c, n):
    acc = fld.one
    for _ in range(n):
        acc = fld.mul(acc, c)
    return acc


# -- projections ----------------------------------------------------------

def projection_forms(ambient_dim: int, center, fld):
    """Coefficient rows of ambient_dim independent linear forms vanishing
    at the center point of P^ambient_dim."""
    pivot = next(i for i, c in enumerate(center) if not fld.is_zero(c))
    rows = []
    for j in range(ambient_dim + 1):
        if j == pivot:
            continue
        row = [fld.zero] * (ambient_dim + 1)
        row[j] = center[pivot]
        row[pivot] = fld.neg(center[j])
        rows.append(row)
    return rows


def project_map(phi: RationalMapRec, center, stem: str) -> RationalMapRec:
    """Compose phi with the linear projection of its target away from
    the center point."""
    fld = phi.source.field
    n = phi.target.numVars - 1
    rows = projection_forms(n, center, fld)
    new_forms = []
    for row in rows:
        g = phi.source.zero()
        for c, f in zip(row, phi.forms):
            if not fld.is_zero(c):
                g = g + f.scale(c)
        new_forms.append(g)
    return rational_map(phi.source, new_forms, stem=stem)


# -- image interpolation --------------------------------------------------

def interpolated_image(phi: RationalMapRec, cap: int) -> IdealHandle:
    """Forms of degree <= cap vanishing on the image of phi (source P^2),
    by kernel linear algebra on the pushed-forward monomials."""
    from .maps import image_up_to_degree
    return image_up_to_degree(phi, cap)


def generator_profile(I: IdealHandle) -> dict:
    prof: dict = {}
    for g in I.gens:
        prof[g.degree()] = prof.get(g.degree(), 0) + 1
    return prof


# -- the build pipeline ---------------------------------------------------

def build_surface(recipe_id: int, fld: FieldDesc, seed: int,
                  retries: int = BUILD_RETRIES) -> SurfaceInstance:
    recipe = RECIPES[recipe_id]
    last_err = None
    for attempt in range(retries):
        try:
            return _build_once(recipe, fld, seed, attempt)
        except GenericityError as e:
            last_err = e
    raise GenericityError(
        f"surface {recipe_id}: no generic configuration after "
        f"{retries} attempts: {last_err}")


def _build_once(recipe: SurfaceRecipe, fld: FieldDesc, seed: int,
                attempt: int) -> SurfaceInstance:
    plane = ring_P(fld, 2, "x")
    rnd = rngmod.stream(seed, f"surface{recipe.id}:att{attempt}")

    # 1. base points and the plane linear system
    points = []
    for mult, count in recipe.base_points:
        for _ in range(count):
            points.append((rngmod.random_point(fld, rnd, 3), mult))
    system = linear_system(plane, recipe.plane_degree, points)
    if len(system) != recipe.system_dim:
        raise GenericityError(
            f"linear system dimension {len(system)} != {recipe.system_dim}")
    phi = rational_map(plane, system, stem="u")

    # 2. projection steps, with stage validation where expected
    stages = []
    for step, expected_profile in zip(recipe.projection_steps,
                                      recipe.stage_profiles):
        n = phi.target.numVars - 1
        if step == FROM_POINT_ON_SECANT:
            center = _secant_point(phi, rnd)
        else:
            center = rngmod.random_point(fld, rnd, n + 1)
        stage_ideal = None
        prof = None
        if expected_profile is not None:
            cap = max(expected_profile)
            stage_ideal = interpolated_image(phi, cap)
            prof = generator_profile(stage_ideal)
            if prof != expected_profile:
                raise GenericityError(
                    f"stage profile {prof} != {expected_profile}")
            if not fld.is_zero(_eval_ideal_at(stage_ideal, center, fld)):
                pass  # center off the stage surface: fine
            else:
                raise GenericityError("projection center lies on the surface")
        stages.append(StageRecord(phi, stage_ideal, prof))
        phi = project_map(phi, center, stem="y")

    if phi.target.numVars != 6:
        raise GenericityError("pipeline did not land in P^5")

    # 3. the ideal of S in P^5 and its certification
    I = interpolated_image(phi, 3)
    prof = generator_profile(I)
    if prof != {3: recipe.cubic_count}:
        raise GenericityError(
            f"final profile {prof} != {{3: {recipe.cubic_count}}}")
    inv = recipe.invariants
    dim, deg = I.dim_degree()
    if (dim, deg) != (2, inv.d):
        raise GenericityError(f"dim/degree {(dim, deg)} != (2, {inv.d})")
    hp = hilbert_polynomial_from_leads(I.groebner().lead_exps(), 6)
    if hp != expected_hilbert_polynomial(inv):
        raise GenericityError(f"Hilbert polynomial {hp} unexpected")
    for g in I.gens:
        if not g.substitute(list(phi.forms)).is_zero():
            raise AssertionError("generator does not pull back to zero")

    return SurfaceInstance(recipe, fld, seed, phi, I, prof, stages,
                           [p for p, _ in points])


def _eval_ideal_at(I: IdealHandle, point, fld):
    """A nonzero value iff some generator is nonzero at the point."""
    for g in I.gens:
        v = g.evaluate(point)
        if not fld.is_zero(v):
            return v
    return fld.zero


def _secant_point(phi: RationalMapRec, rnd: random.Random):
    """A random point on the chord through the images of two random
    plane points (avoiding the endpoints)."""
    fld = phi.source.field
    for _ in range(20):
        p1 = rngmod.random_point(fld, rnd, 3)
        p2 = rngmod.random_point(fld, rnd, 3)
        v1 = phi(p1)
        v2 = phi(p2)
        if v1 is None or v2 is None:
            continue
        lam = fld.of_int(rnd.randrange(1, COEFF_WINDOW + 1))
        center = [fld.add(a, fld.mul(lam, b)) for a, b in zip(v1, v2)]
        if any(not fld.is_zero(c) for c in center):
            return center
    raise GenericityError("no usable secant point found")


# -- smoothness / node detection -----------------------------------------

def singular_probe_dim_degree(inst: SurfaceInstance, rnd: random.Random):
    """(dim, degree) of a random superset of the singular locus of S.

    (-1, 0) certifies smoothness; for the nodal family the expected
    answer is dimension 0 with at least nu points."""
    codim = inst.ideal.ring.numVars - 1 - 2
    probe = inst.ideal.singular_locus_probe(codim, rnd, combos=6)
    return probe.dim_degree()
