"""Congruences of 5-secant conics.

Given one of the three special surfaces S in P^5, a general point p lies
on a unique conic that meets S in a length-5 scheme.  This module locates
that conic exactly:

* ``secant_cone(p, surface)``    -- union E of the secant lines through p,
  cut out by a rank condition on the cubics through S restricted to the
  pencil of lines through p;
* ``cone_of_lines(z, forms)``    -- cone of lines through a point z of the
  variety cut out by ``forms``;
* ``five_secant_conic(p, surface)`` -- the full pipeline: map to the image
  threefold Z by the cubics through S, compare the cone of lines of Z at
  the image of p with the images of the secant lines, pull the one extra
  line back to the conic C, and certify dim/degree of C and of C meet S;
* ``verify_congruence(surface, ...)`` -- run trials and emit certificates;
* ``random_smooth_cubic`` / ``random_nodal_cubic`` -- certified samples
  from the cubics through S.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field as dfield
from typing import List, Optional, Sequence, Tuple

from . import rng as rngmod
from .fields import FieldDesc
from .ideals import GenericityError, IdealHandle, _det, ideal
from .linalg import field_inverse, field_kernel, field_rref
from .maps import (COEFF_WINDOW, GENERICITY_RETRIES, RationalMapRec,
                   image_up_to_degree, point_ideal, pullback, rational_map)
from .ring import Poly, RingCtx, ring_P
from .rng import random_point
from .surfaces import SurfaceInstance, apparent_double_points


@dataclass(frozen=True)
class CongruenceSpec:
    """Numerical type of the congruence: conics (degree 2), 5-secant."""
    curve_degree: int = 2
    secancy: int = 5


# -- restriction of a form to a pencil of lines ---------------------------

def line_restriction(G: Poly, p: Sequence) -> List[Poly]:
    """Coefficients [c_0, ..., c_d] of G(s*p + t*x) as a binary form in
    (s, t); c_k is homogeneous of degree k in the ring of G."""
    ring = G.ring
    fld = ring.field
    n = ring.numVars
    d = G.degree()
    zero = tuple(0 for _ in range(n))
    # layers[k] maps an exponent vector in x to the coefficient of
    # s^(d-k) t^k x^exps accumulated so far.
    out = [dict() for _ in range(d + 1)]
    for c, exps in G.terms:
        layers = {(0, zero): c}
        for j in range(n):
            e = exps[j]
            if not e:
                continue
            # multiply by (s p_j + t x_j)^e
            pj_pow = [fld.one]
            for _ in range(e):
                pj_pow.append(fld.mul(pj_pow[-1], p[j]))
            nxt = {}
            for (k, ex), coef in layers.items():
                for a in range(e + 1):
                    w = fld.mul(coef, fld.of_int(math.comb(e, a)))
                    w = fld.mul(w, pj_pow[e - a])
                    if fld.is_zero(w):
                        continue
                    ne = list(ex)
                    ne[j] += a
                    key = (k + a, tuple(ne))
                    acc = nxt.get(key)
                    nxt[key] = w if acc is None else fld.add(acc, w)
            layers = nxt
        for (k, ex), coef in layers.items():
            acc = out[k].get(ex)
            out[k][ex] = coef if acc is None else fld.add(acc, coef)
    polys = []
    for k in range(d + 1):
        terms = [(c, e) for e, c in out[k].items() if not fld.is_zero(c)]
        polys.append(ring.from_terms(terms))
    return polys


def _surface_ideal(surface) -> IdealHandle:
    return surface if isinstance(surface, IdealHandle) else surface.ideal


def adapted_cubic_basis(surface, p: Sequence) -> List[Poly]:
    """Basis G_1, ..., G_N of the forms through S with G_1(p) = 1 and
    G_i(p) = 0 for i >= 2.  Requires p off S."""
    handle = _surface_ideal(surface)
    fld = handle.ring.field
    gens = list(handle.gens)
    vals = [g.evaluate(p) for g in gens]
    pivot = next((i for i, v in enumerate(vals) if not fld.is_zero(v)), None)
    if pivot is None:
        raise GenericityError("base point lies on the surface")
    g1 = gens[pivot].scale(fld.inv(vals[pivot]))
    rest = [gens[i] - g1.scale(vals[i])
            for i in range(len(gens)) if i != pivot]
    return [g1] + rest


# -- the secant cone ------------------------------------------------------

def secant_cone(p: Sequence, surface) -> IdealHandle:
    """Ideal of the cone of secant (and tangent) lines of S through p.

    A line through p meets S in length >= 2 exactly when the cubics
    through S restrict to a space of binary cubics of dimension <= 2 on
    that line.  In a basis adapted to p the condition becomes rank <= 1
    of a matrix of forms, i.e. the vanishing of its 2x2 minors.  The
    minor scheme carries an embedded component at the vertex p, so the
    ideal is saturated there before being returned."""
    adapted = adapted_cubic_basis(surface, p)
    degs = {g.degree() for g in adapted}
    if len(degs) != 1:
        raise ValueError("secant cone needs equal-degree generators")
    k = degs.pop()
    rows = []
    for g in adapted[1:]:
        cs = line_restriction(g, p)
        if not cs[0].is_zero():
            raise AssertionError("adapted basis must vanish at the vertex")
        rows.append(cs[1:])
    # Length >= 2 on the line <=> the restricted system spans at most
    # k - 1 binary forms <=> the reduced matrix has rank <= k - 2, i.e.
    # all of its (k-1) x (k-1) minors vanish.
    size = k - 1
    gens = []
    for ris in itertools.combinations(range(len(rows)), size):
        for cis in itertools.combinations(range(k), size):
            m = _det([[rows[i][c] for c in cis] for i in ris])
            if not m.is_zero():
                gens.append(m)
    if not gens:
        raise GenericityError("secant rank condition degenerated")
    ring = _surface_ideal(surface).ring
    return ideal(ring, gens).saturate(point_ideal(ring, p))


# -- cones of lines -------------------------------------------------------

def _vertex_coefficient_forms(G: Poly, small: RingCtx) -> List[Poly]:
    """For G with G(e_0) = 0, the forms H_1, ..., H_g in the variables
    x_1..x_n (as elements of ``small``) such that a line through e_0 with
    direction y lies on V(G) iff all H_k(y) vanish."""
    d = G.degree()
    fld = G.ring.field
    buckets = [dict() for _ in range(d + 1)]
    for c, exps in G.terms:
        k = d - exps[0]
        tail = tuple(exps[1:])
        acc = buckets[k].get(tail)
        buckets[k][tail] = c if acc is None else fld.add(acc, c)
    if any(not fld.is_zero(c) for c in buckets[0].values()):
        raise ValueError("vertex does not lie on the hypersurface")
    out = []
    for k in range(1, d + 1):
        terms = [(c, e) for e, c in buckets[k].items() if not fld.is_zero(c)]
        f = small.from_terms(terms)
        if not f.is_zero():
            out.append(f)
    return out


def cone_of_lines(z: Sequence, forms: Sequence[Poly]) -> IdealHandle:
    """Ideal (in the ambient ring of ``forms``) of the union of lines
    through z that lie on V(forms)."""
    ring = forms[0].ring
    fld = ring.field
    n = ring.numVars
    pivot = next(i for i, c in enumerate(z) if not fld.is_zero(c))
    # Columns of A: z first, then the standard basis minus e_pivot.
    cols = [list(z)] + [[fld.one if i == j else fld.zero for i in range(n)]
                        for j in range(n) if j != pivot]
    A = [[cols[c][r] for c in range(n)] for r in range(n)]
    Ainv = field_inverse(fld, A)
    sub_in = [ring.from_terms(
        [(A[i][j], tuple(1 if t == j else 0 for t in range(n)))
         for j in range(n) if not fld.is_zero(A[i][j])])
        for i in range(n)]
    small = RingCtx(fld, [f"cl{i}" for i in range(1, n)], ring.order)
    parts = []
    for g in forms:
        parts.extend(_vertex_coefficient_forms(g.substitute(sub_in), small))
    # Map back: y_i = (A^{-1} x)_i for i = 1..n-1.
    back = [ring.from_terms(
        [(Ainv[i][j], tuple(1 if t == j else 0 for t in range(n)))
         for j in range(n) if not fld.is_zero(Ainv[i][j])])
        for i in range(1, n)]
    gens = [h.substitute(back) for h in parts]
    gens = [g for g in gens if not g.is_zero()]
    return ideal(ring, gens)


# -- linear reduction -----------------------------------------------------

@dataclass
class LinearReduction:
    """A coordinate subspace presentation of an ideal whose generators
    include linear forms: the linear span is solved for the pivot
    variables and the remaining generators are rewritten in the free
    ones."""
    big: RingCtx
    small: RingCtx
    kept: List[int]            # indices of free variables in the big ring
    subst: List[Poly]          # vector of linear forms: big vars -> small
    lin_forms: List[Poly]      # span equations back in the big ring
    gens: List[Poly]           # non-linear generators rewritten in small

    def embed(self, f: Poly) -> Poly:
        """A small-ring poly as a big-ring poly in the kept variables."""
        nb = self.big.numVars
        terms = []
        for c, exps in f.terms:
            ne = [0] * nb
            for pos, e in enumerate(exps):
                ne[self.kept[pos]] = e
            terms.append((c, tuple(ne)))
        return self.big.from_terms(terms)


def linear_reduce(handle: IdealHandle) -> LinearReduction:
    ring = handle.ring
    fld = ring.field
    n = ring.numVars
    lin, rest = [], []
    for g in handle.gens:
        if g.is_zero():
            continue
        (lin if g.degree() == 1 else rest).append(g)
    rows = []
    for g in lin:
        row = [fld.zero] * n
        for c, exps in g.terms:
            row[exps.index(1)] = c
        rows.append(row)
    R, pivots = field_rref(fld, rows) if rows else ([], [])
    kept = [i for i in range(n) if i not in pivots]
    if not kept:
        raise GenericityError("linear span is empty")
    small = RingCtx(fld, [ring.varNames[i] for i in kept], ring.order)
    pos = {v: k for k, v in enumerate(kept)}
    subst = []
    for i in range(n):
        if i in pos:
            subst.append(small.var(pos[i]))
        else:
            r = pivots.index(i)
            terms = [(fld.neg(R[r][j]),
                      tuple(1 if t == pos[j] else 0 for t in range(len(kept))))
                     for j in kept if not fld.is_zero(R[r][j])]
            subst.append(small.from_terms(terms))
    lin_big = []
    for r, pc in enumerate(pivots):
        terms = [(R[r][j], tuple(1 if t == j else 0 for t in range(n)))
                 for j in range(n) if not fld.is_zero(R[r][j])]
        lin_big.append(ring.from_terms(terms))
    gens = []
    for g in rest:
        h = g.substitute(subst)
        if not h.is_zero():
            gens.append(h)
    return LinearReduction(ring, small, kept, subst, lin_big, gens)


# -- the pipeline ---------------------------------------------------------

@dataclass
class ConicResult:
    point: list
    secant_cone: IdealHandle
    secant_count: int
    lines_in_Z: int
    extra_line_degree: int
    conic: IdealHandle
    conic_dim_degree: Tuple[int, int]
    intersection_dim_degree: Tuple[int, int]
    cap_used: int
    timings: dict


def five_secant_conic(p: Sequence, surface: SurfaceInstance,
                      cap: Optional[int] = None) -> ConicResult:
    """Locate the 5-secant conic of S through p and certify it."""
    fld = surface.field
    R = surface.ideal.ring
    inv = surface.invariants
    delta2 = apparent_double_points(inv)
    timings = {}

    t0 = time.perf_counter()
    adapted = adapted_cubic_basis(surface, p)
    E = secant_cone(p, surface)
    dimE, degE = E.dim_degree()
    timings["secantCone"] = time.perf_counter() - t0
    if (dimE, degE) != (1, delta2):
        raise GenericityError(
            f"secant cone has dim/degree ({dimE}, {degE}), "
            f"expected (1, {delta2})")

    # Map to Z by the adapted cubics; the image of p is (1:0:...:0).
    N = len(adapted)
    target = ring_P(fld, N - 1, "y")
    phi = rational_map(R, adapted, target)
    proj = ring_P(fld, N - 2, "z")          # P^(N-1) projected from phi(p)
    phi_proj = rational_map(R, adapted[1:], proj)

    caps = [cap] if cap is not None else [2, 3]
    last_err = None
    for c in caps:
        t0 = time.perf_counter()
        Z = image_up_to_degree(phi, c)
        timings["imageEquations"] = time.perf_counter() - t0

        # Cone of lines of Z at phi(p), written in the projected ring so
        # that lines through the vertex become points.
        t0 = time.perf_counter()
        parts = []
        for g in Z.gens:
            parts.extend(_vertex_coefficient_forms(g, proj))
        W = ideal(proj, parts)
        red = linear_reduce(W)
        Wred = ideal(red.small, red.gens) if red.gens \
            else ideal(red.small, [])
        dimW, degW = Wred.dim_degree()
        timings["coneOfLines"] = time.perf_counter() - t0
        if (dimW, degW) == (0, delta2 + 1):
            break
        last_err = GenericityError(
            f"cone of lines has dim/degree ({dimW}, {degW}) at cap {c}, "
            f"expected (0, {delta2 + 1})")
    else:
        raise last_err
    cap_used = c
    lines_in_Z = degW

    # Images of the secant lines: delta2 points of the projected cone.
    t0 = time.perf_counter()
    imgE = image_up_to_degree(phi_proj, 2, sub=E)
    secant_pts = ideal(red.small,
                       [g.substitute(red.subst) for g in imgE.gens])
    dimP, degP = secant_pts.dim_degree()
    timings["secantImages"] = time.perf_counter() - t0
    if (dimP, degP) != (0, delta2):
        raise GenericityError(
            f"secant line images have dim/degree ({dimP}, {degP}), "
            f"expected (0, {delta2})")

    # The extra line: saturate the cone by the secant images.
    t0 = time.perf_counter()
    L = Wred.saturate(secant_pts)
    dimL, degL = L.dim_degree()
    timings["extraLine"] = time.perf_counter() - t0
    if dimL != 0:
        raise GenericityError(
            f"residual line locus has dimension {dimL}")
    extra = degL

    # Pull the extra line back to the conic.
    t0 = time.perf_counter()
    lifted = [red.embed(g) for g in L.gens] + red.lin_forms
    C = pullback(phi_proj, ideal(proj, lifted))
    dimC, degC = C.dim_degree()
    CS = C + surface.ideal
    dimCS, degCS = CS.dim_degree()
    timings["conic"] = time.perf_counter() - t0

    return ConicResult(
        point=list(p),
        secant_cone=E,
        secant_count=delta2,
        lines_in_Z=lines_in_Z,
        extra_line_degree=extra,
        conic=C,
        conic_dim_degree=(dimC, degC),
        intersection_dim_degree=(dimCS, degCS),
        cap_used=cap_used,
        timings=timings,
    )


# -- certificates ---------------------------------------------------------

@dataclass
class CongruenceCertificate:
    surfaceId: int
    fieldChar: int
    seed: int
    trial: int
    point: list
    secantLineCount: int
    linesInZ: int
    extraLineDegree: int
    conicDimDeg: tuple
    intersectionLength: int
    unique: bool
    passed: bool
    capUsed: int
    timings: dict

    def to_json(self) -> dict:
        return {
            "surfaceId": self.surfaceId,
            "fieldChar": self.fieldChar,
            "seed": self.seed,
            "trial": self.trial,
            "point": [str(c) for c in self.point],
            "secantLineCount": self.secantLineCount,
            "linesInZ": self.linesInZ,
            "extraLineDegree": self.extraLineDegree,
            "conicDimDeg": list(self.conicDimDeg),
            "intersectionLength": self.intersectionLength,
            "unique": self.unique,
            "passed": self.passed,
            "capUsed": self.capUsed,
            "timings": {k: round(v, 4) for k, v in self.timings.items()},
        }


def certify_result(surface: SurfaceInstance, res: ConicResult,
                   seed: int, trial: int) -> CongruenceCertificate:
    unique = res.extra_line_degree == 1
    passed = (unique
              and res.lines_in_Z == res.secant_count + 1
              and res.conic_dim_degree == (1, 2)
              and res.intersection_dim_degree == (0, 5))
    return CongruenceCertificate(
        surfaceId=surface.recipe.id,
        fieldChar=surface.field.characteristic,
        seed=seed,
        trial=trial,
        point=[int(c) if surface.field.characteristic else c
               for c in res.point],
        secantLineCount=res.secant_count,
        linesInZ=res.lines_in_Z,
        extraLineDegree=res.extra_line_degree,
        conicDimDeg=res.conic_dim_degree,
        intersectionLength=res.intersection_dim_degree[1]
        if res.intersection_dim_degree[0] == 0 else -1,
        unique=unique,
        passed=passed,
        capUsed=res.cap_used,
        timings=res.timings,
    )


def verify_congruence(surface: SurfaceInstance, trials: int = 1,
                      seed: Optional[int] = None,
                      cap: Optional[int] = None
                      ) -> List[CongruenceCertificate]:
    """Run ``trials`` independent conic constructions at fresh random
    points; genericity failures are retried with new points."""
    if seed is None:
        seed = surface.seed
    certs = []
    sid = surface.recipe.id
    for t in range(trials):
        last = None
        for att in range(GENERICITY_RETRIES):
            rng = rngmod.stream(seed, f"congruence:{sid}:trial{t}:att{att}")
            p = random_point(surface.field, rng,
                             surface.ideal.ring.numVars, COEFF_WINDOW)
            try:
                res = five_secant_conic(p, surface, cap=cap)
            except GenericityError as e:
                last = e
                continue
            certs.append(certify_result(surface, res, seed, t))
            break
        else:
            raise GenericityError(
                f"congruence trial {t} exhausted retries: {last}")
    return certs


# -- cubics through S -----------------------------------------------------

def cubic_singular_locus(F: Poly) -> IdealHandle:
    """Saturated singular locus of the cubic hypersurface V(F)."""
    ring = F.ring
    gens = [F.partial(i) for i in range(ring.numVars)]
    gens = [g for g in gens if not g.is_zero()] + [F]
    return ideal(ring, gens).saturate_irrelevant()


def random_cubic_through(surface: SurfaceInstance, rng) -> Tuple[Poly, list]:
    """A random coefficient combination of the cubics through S."""
    fld = surface.field
    gens = surface.ideal.gens
    while True:
        coeffs = [fld.of_int(rng.randint(-COEFF_WINDOW, COEFF_WINDOW))
                  for _ in gens]
        F = surface.ideal.ring.zero()
        for c, g in zip(coeffs, gens):
            if not fld.is_zero(c):
                F = F + g.scale(c)
        if not F.is_zero():
            return F, coeffs


def random_smooth_cubic(surface: SurfaceInstance, rng,
                        retries: int = GENERICITY_RETRIES
                        ) -> Tuple[Poly, list]:
    """A cubic through S certified smooth: its singular locus is empty."""
    for _ in range(retries):
        F, coeffs = random_cubic_through(surface, rng)
        if cubic_singular_locus(F).dim_degree() == (-1, 0):
            return F, coeffs
    raise GenericityError("no smooth cubic found")


def random_nodal_cubic(surface: SurfaceInstance, rng,
                       retries: int = GENERICITY_RETRIES
                       ) -> Tuple[Poly, list, list]:
    """A cubic through S with exactly one singular point, placed at a
    random point q off S; certified by Sing(F) having dim/degree (0, 1)."""
    fld = surface.field
    ring = surface.ideal.ring
    gens = surface.ideal.gens
    n = ring.numVars
    for _ in range(retries):
        q = random_point(fld, rng, n, COEFF_WINDOW)
        if all(fld.is_zero(g.evaluate(q)) for g in gens):
            continue
        rows = [[g.partial(j).evaluate(q) for g in gens] for j in range(n)]
        basis = field_kernel(fld, rows, ncols=len(gens))
        if not basis:
            continue
        coeffs = [fld.zero] * len(gens)
        for v in basis:
            c = fld.of_int(rng.randint(-COEFF_WINDOW, COEFF_WINDOW))
            coeffs = [fld.add(a, fld.mul(c, b)) for a, b in zip(coeffs, v)]
        F = ring.zero()
        for c, g in zip(coeffs, gens):
            if not fld.is_zero(c):
                F = F + g.scale(c)
        if F.is_zero():
            continue
        sing = cubic_singular_locus(F)
        if sing.dim_degree() != (0, 1):
            continue
        if any(not fld.is_zero(g.evaluate(q)) for g in sing.gens):
            continue
        return F, coeffs, list(q)
    raise GenericityError("no one-node cubic found")
