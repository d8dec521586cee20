"""Rational maps between projective spaces: base loci, images, fibers,
multidegrees and map degrees.

A map P^ns --> P^nt is recorded by nt+1 homogeneous forms of one common
degree in the source ring.  Probabilistic routines (multidegree,
map_degree) draw their randomness from an explicit random.Random and
retry a bounded number of times before raising GenericityError."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .fields import FieldDesc
from .ideals import GenericityError, IdealHandle, ideal
from .linalg import kernel_basis, matrix_rank
from .orders import GREVLEX, block_elim
from .ring import Poly, RingCtx, ring_P

GENERICITY_RETRIES = 5
COEFF_WINDOW = 100


@dataclass(frozen=True)
class RationalMapRec:
    source: RingCtx
    target: RingCtx
    forms: tuple

    @property
    def degree(self) -> int:
        return self.forms[0].degree()

    def __call__(self, point):
        """Image of a raw-coordinate point, or None if indeterminate."""
        v = [f.evaluate(point) for f in self.forms]
        fld = self.source.field
        if all(fld.is_zero(c) for c in v):
            return None
        return v

    def to_json(self) -> dict:
        return {
            "field": {"char": self.source.field.characteristic},
            "sourceVars": list(self.source.varNames),
            "targetVars": list(self.target.varNames),
            "forms": [f.to_json() for f in self.forms],
        }

    @staticmethod
    def from_json(obj: dict) -> "RationalMapRec":
        fld = FieldDesc(obj["field"]["char"])
        source = RingCtx(fld, list(obj["sourceVars"]), GREVLEX)
        target = RingCtx(fld, list(obj["targetVars"]), GREVLEX)
        forms = [Poly.from_json(f, source) for f in obj["forms"]]
        return rational_map(source, forms, target)


def rational_map(source: RingCtx, forms: Sequence[Poly],
                 target: Optional[RingCtx] = None,
                 stem: str = "y") -> RationalMapRec:
    forms = [f if isinstance(f, Poly) else source.constant(f) for f in forms]
    if not forms:
        raise ValueError("a rational map needs at least one form")
    if any(f.ring is not source for f in forms):
        raise ValueError("all forms must live in the source ring")
    degs = {f.degree() for f in forms if not f.is_zero()}
    if len(degs) != 1:
        raise ValueError("forms must be homogeneous of one common degree")
    if any(not f.is_homogeneous() for f in forms):
        raise ValueError("forms must be homogeneous")
    if target is None:
        target = ring_P(source.field, len(forms) - 1, stem=stem)
    if target.numVars != len(forms):
        raise ValueError("target variable count must match form count")
    if target.field != source.field:
        raise ValueError("source and target fields must agree")
    return RationalMapRec(source, target, tuple(forms))


def base_locus(phi: RationalMapRec) -> IdealHandle:
    """Saturated ideal of the indeterminacy locus."""
    return ideal(phi.source, phi.forms).saturate_irrelevant()


def point_ideal(ring: RingCtx, point) -> IdealHandle:
    """Homogeneous ideal of a single projective point."""
    fld = ring.field
    pivot = next(i for i, c in enumerate(point) if not fld.is_zero(c))
    gens = []
    for j in range(ring.numVars):
        if j == pivot:
            continue
        gens.append(ring.var(j).scale(point[pivot])
                    - ring.var(pivot).scale(point[j]))
    return ideal(ring, gens)


def random_subvariety_point(sub: IdealHandle, rng: random.Random,
                            lines: Optional[IdealHandle] = None):
    """A random rational point on V(sub) obtained by cutting with generic
    hyperplanes through nothing in particular; works when V(sub) has a
    dense set of rational points over a finite field.  For V(sub) = P^n
    (zero ideal) a uniform random point is drawn directly."""
    ring = sub.ring
    fld = ring.field
    if sub.is_zero():
        from .rng import random_point
        return random_point(fld, rng, ring.numVars, COEFF_WINDOW)
    raise NotImplementedError("points on proper subvarieties are found "
                              "by the surface pipeline, not here")


def _random_combination(forms, rng: random.Random):
    ring = forms[0].ring
    fld = ring.field
    while True:
        coeffs = [fld.random(rng, COEFF_WINDOW) for _ in forms]
        g = ring.zero()
        for c, f in zip(coeffs, forms):
            if not fld.is_zero(c):
                g = g + f.scale(c)
        if not g.is_zero():
            return g


def pullback(phi: RationalMapRec, target_ideal: IdealHandle,
             sub: Optional[IdealHandle] = None) -> IdealHandle:
    """Closure of phi^{-1}(V(target_ideal)) inside V(sub): substitute the
    forms and saturate away the base locus."""
    if target_ideal.ring is not phi.target:
        raise ValueError("target_ideal must live in the target ring")
    gens = [g.substitute(list(phi.forms)) for g in target_ideal.gens]
    if sub is not None:
        gens = gens + list(sub.gens)
    pulled = ideal(phi.source, gens)
    return pulled.saturate(ideal(phi.source, phi.forms))


def fiber_over_image_point(phi: RationalMapRec, point,
                           sub: Optional[IdealHandle] = None) -> IdealHandle:
    """Saturated ideal of phi^{-1}(phi(point))."""
    image = phi(point)
    if image is None:
        raise GenericityError("chosen point lies in the base locus")
    return pullback(phi, point_ideal(phi.target, image), sub)


def map_degree(phi: RationalMapRec, rng: random.Random,
               sub: Optional[IdealHandle] = None,
               retries: int = GENERICITY_RETRIES) -> int:
    """Number of points in the fiber over the image of a random point;
    the degree of phi onto its image when that is generically finite."""
    from .rng import random_point

    ring = phi.source
    for _ in range(retries):
        if sub is None or sub.is_zero():
            p = random_point(ring.field, rng, ring.numVars, COEFF_WINDOW)
        else:
            raise NotImplementedError("map_degree on a proper subvariety "
                                      "needs an explicit point supply")
        if phi(p) is None:
            continue
        fib = fiber_over_image_point(phi, p, sub)
        d, deg = fib.dim_degree()
        if d == 0:
            return deg
        # positive-dimensional fiber over a random point: not finite
        if d > 0:
            raise ValueError("map is not generically finite")
    raise GenericityError("no suitable random point found for map_degree")


def multidegree(phi: RationalMapRec, rng: random.Random,
                sub: Optional[IdealHandle] = None,
                retries: int = GENERICITY_RETRIES):
    """Projective degrees [d_0, ..., d_s] of phi on V(sub), s = dim V(sub).

    d_i is the degree of the closure of V(sub) cut by the pullbacks of i
    generic hyperplanes of the target, after removing the base locus."""
    ring = phi.source
    base = ideal(ring, phi.forms)
    X = sub if sub is not None else ideal(ring, [])
    s, d0 = X.dim_degree()
    if s < 0:
        raise ValueError("empty source variety")
    degrees = [d0]
    for i in range(1, s + 1):
        for attempt in range(retries):
            combos = [_random_combination(phi.forms, rng) for _ in range(i)]
            J = ideal(ring, list(X.gens) + combos).saturate(base)
            d, deg = J.dim_degree()
            if d == s - i:
                degrees.append(deg)
                break
            if d < s - i:
                # the cut dropped below the expected dimension: the linear
                # system fails to move on some component, degree is 0
                degrees.append(0)
                break
        else:
            raise GenericityError(f"multidegree d_{i}: no generic cut "
                                  f"after {retries} attempts")
    return degrees


def inverse_degree_of_cremona(phi: RationalMapRec, rng: random.Random,
                              retries: int = GENERICITY_RETRIES) -> int:
    """Degree of the forms of the inverse of a birational self-map of P^n:
    the next-to-last projective degree d_{n-1}."""
    if phi.source.numVars != phi.target.numVars:
        raise ValueError("not a self-map of projective space")
    if map_degree(phi, rng, retries=retries) != 1:
        raise ValueError("map is not birational")
    degs = multidegree(phi, rng, retries=retries)
    return degs[-2]


# -- images ---------------------------------------------------------------

def image_graph(phi: RationalMapRec, sub: Optional[IdealHandle] = None
                ) -> IdealHandle:
    """Ideal of the closure of the image via graph elimination.

    Exact but expensive: meant for small fixtures and cross-checks, not
    for the surface pipeline."""
    src, tgt = phi.source, phi.target
    ns, nt = src.numVars, tgt.numVars
    names = list(src.varNames) + list(tgt.varNames)
    if len(set(names)) != len(names):
        raise ValueError("source and target variable names must differ")
    prod = RingCtx(src.field, names, block_elim(ns))
    xs = [prod.var(i) for i in range(ns)]
    ys = [prod.var(ns + j) for j in range(nt)]

    def embed_src(f: Poly) -> Poly:
        return f.substitute(xs)

    forms_e = [embed_src(f) for f in phi.forms]
    gens = [embed_src(g) for g in sub.gens] if sub is not None else []
    # rank-one condition (y_j : phi_j), i.e. the cone over the graph
    for j in range(nt):
        for k in range(j + 1, nt):
            gens.append(ys[j] * forms_e[k] - ys[k] * forms_e[j])
    G = ideal(prod, gens)
    # remove the junk component sitting over the base locus
    G = G.saturate(ideal(prod, forms_e))
    elim = G.eliminate(ns, tgt)
    return elim.saturate_irrelevant()


def image_up_to_degree(phi: RationalMapRec, cap: int,
                       sub: Optional[IdealHandle] = None) -> IdealHandle:
    """All forms of degree <= cap vanishing on the image of V(sub).

    Pure interpolation: for each degree c the target monomials are pushed
    through the map, reduced modulo sub, and the kernel of the resulting
    coefficient matrix is computed.  No elimination orders involved."""
    src, tgt = phi.source, phi.target
    fld = src.field
    subI = sub if sub is not None else ideal(src, [])
    reduce = (lambda f: f) if subI.is_zero() else subI.normal_form

    reduced_forms = [reduce(f) for f in phi.forms]
    prod_cache: dict = {(): src.one()}

    def product_of(indices) -> Poly:
        t = tuple(indices)
        if t not in prod_cache:
            prod_cache[t] = reduce(product_of(t[:-1]) * reduced_forms[t[-1]])
        return prod_cache[t]

    found = []
    for c in range(1, cap + 1):
        monoms = monomials_of_degree(tgt.numVars, c)
        cols = []
        for exps in monoms:
            idx = []
            for i, e in enumerate(exps):
                idx.extend([i] * e)
            cols.append(product_of(idx))
        rows_by_monom: dict = {}
        for j, p in enumerate(cols):
            for coef, exps in p.terms:
                rows_by_monom.setdefault(exps, {})[j] = coef
        ncols = len(cols)
        zero = fld.zero
        rows = []
        for entries in rows_by_monom.values():
            rows.append([entries.get(j, zero) for j in range(ncols)])
        kern = kernel_basis(rows, fld.characteristic, ncols)
        if not kern:
            continue
        # keep only kernel vectors independent of monomial multiples of
        # the generators already found in lower degrees
        mono_pos = {m: j for j, m in enumerate(monoms)}
        old_rows = []
        for g in found:
            shifts = monomials_of_degree(tgt.numVars, c - g.degree())
            for s in shifts:
                row = [zero] * ncols
                for coef, exps in g.terms:
                    row[mono_pos[tuple(a + b for a, b in zip(exps, s))]] = coef
                old_rows.append(row)
        base_rank = matrix_rank(old_rows, fld.characteristic)
        kept_rows = list(old_rows)
        rank = base_rank
        for vec in kern:
            cand = kept_rows + [list(vec)]
            r = matrix_rank(cand, fld.characteristic)
            if r > rank:
                rank = r
                kept_rows = cand
                g = tgt.from_terms(
                    [(vec[j], monoms[j]) for j in range(ncols)
                     if not fld.is_zero(vec[j])])
                found.append(g)
    return ideal(tgt, found)


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree d, most-significant first."""
    out = []

    def rec(i, rem, acc):
        if i == nvars - 1:
            out.append(tuple(acc + [rem]))
            return
        for e in range(rem, -1, -1):
            rec(i + 1, rem - e, acc + [e])

    if nvars == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out
