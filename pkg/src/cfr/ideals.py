"""Ideal algebra over projective space: sums, products, intersections,
quotients, saturation, elimination, Hilbert dimension/degree, singular
loci, graded pieces.

IdealHandle is immutable with write-once caches (Groebner bases per
order, Hilbert data); every operation returns a new handle.
"""

from __future__ import annotations

from math import comb

from . import gb as gbmod
from .hilbert import dim_degree_from_leads, hilbert_function_from_leads
from .orders import GREVLEX, block_elim
from .ring import Poly, RingCtx, RingMismatch


class GenericityError(RuntimeError):
    """A randomized construction hit a degenerate configuration."""


class IdealHandle:
    def __init__(self, ring: RingCtx, gens):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        for g in self.gens:
            if g.ring != ring:
                raise RingMismatch("generator from a different ring")
            if not g.is_homogeneous():
                raise ValueError("ideal generators must be homogeneous")
        self._gb = {}
        self._dim_degree = None

    # -- caching -------------------------------------------------------
    def groebner(self, order=None) -> gbmod.GroebnerBasis:
        order = order or self.ring.order
        if order not in self._gb:
            if not self.gens:
                basis = gbmod.GroebnerBasis(self.ring.with_order(order), [],
                                            self.ring.with_order(order).pack,
                                            None, [])
                self._gb[order] = basis
            else:
                self._gb[order] = gbmod.groebner(self.gens, order)
        return self._gb[order]

    def normal_form(self, f: Poly) -> Poly:
        g = self.groebner()
        if not g.elements:
            return f
        return g.normal_form(f)

    def contains_poly(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains_poly(g) for g in other.gens)

    def equals(self, other: "IdealHandle") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.groebner().is_unit_ideal()

    # -- simple algebra -------------------------------------------------
    def _check(self, other: "IdealHandle"):
        if other.ring != self.ring:
            raise RingMismatch("ideals from different rings")

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        self._check(other)
        return IdealHandle(self.ring, self.gens + other.gens)

    def product(self, other: "IdealHandle") -> "IdealHandle":
        self._check(other)
        return IdealHandle(self.ring, [a * b for a in self.gens for b in other.gens])

    def interreduced(self) -> "IdealHandle":
        """Handle presented by its reduced Groebner basis."""
        return IdealHandle(self.ring, self.groebner().elements)

    # -- intersection via the degree-0 auxiliary variable ---------------
    def intersect(self, other: "IdealHandle") -> "IdealHandle":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return IdealHandle(self.ring, [])
        ring = self.ring
        aux = RingCtx(ring.field, ("t@",) + ring.varNames, block_elim(1),
                      weights=(0,) + tuple(ring.weights))
        t = aux.var(0)
        one = aux.one()

        def embed(f):
            return aux.from_terms((c, (0,) + e) for c, e in f.terms)

        gens = [t * embed(f) for f in self.gens]
        gens += [(one - t) * embed(g) for g in other.gens]
        basis = gbmod.groebner(gens)
        out = []
        for e in basis.elements:
            if all(exps[0] == 0 for _, exps in e.terms):
                out.append(ring.from_terms((c, exps[1:]) for c, exps in e.terms))
        return IdealHandle(ring, out)

    # -- quotient and saturation ----------------------------------------
    def quotient_by_poly(self, g: Poly) -> "IdealHandle":
        if g.is_zero():
            raise ValueError("quotient by the zero polynomial")
        if self.is_zero():
            return self
        extra = gbmod.quotient_generators(self.gens, g)
        return IdealHandle(self.ring, self.gens + extra).interreduced()

    def quotient(self, other: "IdealHandle") -> "IdealHandle":
        self._check(other)
        if other.is_zero():
            raise ValueError("quotient by the zero ideal")
        if self.is_zero():
            return self
        if other.is_unit():
            return self
        result = None
        for g in other.gens:
            q = self.quotient_by_poly(g)
            result = q if result is None else result.intersect(q)
        return result.interreduced()

    def saturate(self, other: "IdealHandle") -> "IdealHandle":
        self._check(other)
        current = self.interreduced() if self.gens else self
        while True:
            nxt = current.quotient(other)
            if nxt.equals(current):
                return current
            current = nxt

    def saturate_irrelevant(self) -> "IdealHandle":
        return self.saturate(IdealHandle(self.ring, self.ring.gens()))

    # -- elimination -----------------------------------------------------
    def eliminate(self, first_k: int, target_ring: RingCtx | None = None) -> "IdealHandle":
        """Generators of I intersected with the subring omitting the first
        first_k variables, returned in target_ring (fresh by default)."""
        ring = self.ring
        if not (0 < first_k < ring.numVars):
            raise ValueError("eliminate needs 0 < k < numVars")
        if target_ring is None:
            target_ring = RingCtx(ring.field, ring.varNames[first_k:], GREVLEX,
                                  weights=ring.weights[first_k:])
        basis = self.groebner(block_elim(first_k))
        out = []
        for e in basis.elements:
            if all(all(x == 0 for x in exps[:first_k]) for _, exps in e.terms):
                out.append(target_ring.from_terms((c, exps[first_k:]) for c, exps in e.terms))
        return IdealHandle(target_ring, out)

    # -- numerics --------------------------------------------------------
    def dim_degree(self):
        """(projective dimension, degree); empty scheme is (-1, 0)."""
        if self._dim_degree is None:
            if not all(w == 1 for w in self.ring.weights):
                raise ValueError("dim_degree requires the standard grading")
            if self.is_zero():
                self._dim_degree = (self.ring.numVars - 1, 1)
            else:
                basis = self.groebner(GREVLEX)
                self._dim_degree = dim_degree_from_leads(basis.lead_exps(),
                                                         self.ring.numVars)
        return self._dim_degree

    def graded_piece_dim(self, d: int) -> int:
        """dim_K I_d of the ideal generated by gens."""
        if d < 0:
            return 0
        n = self.ring.numVars
        full = comb(n - 1 + d, n - 1)
        if self.is_zero():
            return 0
        basis = self.groebner(GREVLEX)
        return full - hilbert_function_from_leads(basis.lead_exps(), n, d)

    def hilbert_function(self, d: int) -> int:
        """dim_K (R/I)_d."""
        n = self.ring.numVars
        if self.is_zero():
            return comb(n - 1 + d, n - 1)
        basis = self.groebner(GREVLEX)
        return hilbert_function_from_leads(basis.lead_exps(), n, d)

    # -- singular loci ----------------------------------------------------
    def jacobian(self):
        return [[g.partial(i) for i in range(self.ring.numVars)] for g in self.gens]

    def singular_locus(self, codim: int) -> "IdealHandle":
        """I plus the codim x codim minors of the Jacobian of gens.

        Exact; intended for hypersurfaces and small fixtures.  For the
        surface pipeline use singular_locus_probe."""
        from itertools import combinations

        J = self.jacobian()
        rows = len(J)
        cols = self.ring.numVars
        if codim > min(rows, cols):
            raise ValueError("codim exceeds Jacobian size")
        minors = []
        for ri in combinations(range(rows), codim):
            for ci in combinations(range(cols), codim):
                minors.append(_det([[J[r][c] for c in ci] for r in ri]))
        return IdealHandle(self.ring, self.gens + [m for m in minors if not m.is_zero()])

    def singular_locus_probe(self, codim: int, rng,
                             combos: int | None = None) -> "IdealHandle":
        """A superset of the singular locus from randomly compressed
        Jacobian minors: empty result certifies smoothness.

        The Jacobian is compressed to (codim+2) x (codim+2); its codim-
        size minors cut out the singular locus plus junk of codimension
        3 beyond it.  When `combos` is given, only that many random
        combinations of the minors are kept (junk codimension `combos`
        beyond the singular locus)."""
        ring = self.ring
        f = ring.field
        J = self.jacobian()
        cols = ring.numVars
        # group rows by generator degree so compressed rows stay homogeneous
        groups = {}
        for i, g in enumerate(self.gens):
            groups.setdefault(g.degree(), []).append(i)
        degs = sorted(groups)
        alloc = _allocate(codim + 2, [len(groups[d]) for d in degs])
        comp_rows = []
        for d, take in zip(degs, alloc):
            idxs = groups[d]
            if take == len(idxs):
                comp_rows.extend(J[i] for i in idxs)
            else:
                for _ in range(take):
                    row = [ring.zero() for _ in range(cols)]
                    for i in idxs:
                        c = f.of_int(rng.randint(-100, 100))
                        row = [a + b.scale(c) for a, b in zip(row, J[i])]
                    comp_rows.append(row)
        # compress columns to codim + 2
        ncols = min(cols, codim + 2)  # junk codim 3 past the true locus
        B = [[f.of_int(rng.randint(-100, 100)) for _ in range(ncols)]
             for _ in range(cols)]
        M = [[_dot(row, B, j, ring) for j in range(ncols)] for row in comp_rows]
        from itertools import combinations

        minors = []
        for ri in combinations(range(len(M)), codim):
            for ci in combinations(range(ncols), codim):
                minors.append(_det([[M[r][c] for c in ci] for r in ri]))
        minors = [m for m in minors if not m.is_zero()]
        if combos is not None and combos < len(minors):
            # homogeneity: all minors share one degree only when all
            # generators do; otherwise combine within equal degrees
            by_deg: dict = {}
            for m in minors:
                by_deg.setdefault(m.degree(), []).append(m)
            mixed = []
            for _ in range(combos):
                for ms in by_deg.values():
                    g = ring.zero()
                    for m in ms:
                        g = g + m.scale(f.of_int(rng.randint(-100, 100)))
                    if not g.is_zero():
                        mixed.append(g)
            minors = mixed
        return IdealHandle(ring, self.gens + minors)


def _dot(row, B, j, ring):
    acc = ring.zero()
    for a, brow in zip(row, B):
        acc = acc + a.scale(brow[j])
    return acc


def _allocate(total, sizes):
    """Split `total` row slots across groups, at least 1 per group when
    possible, never exceeding a group's size."""
    alloc = [0] * len(sizes)
    remaining = total
    for i, s in enumerate(sizes):
        if remaining and s:
            alloc[i] = 1
            remaining -= 1
    changed = True
    while remaining and changed:
        changed = False
        for i, s in enumerate(sizes):
            if remaining and alloc[i] < s:
                alloc[i] += 1
                remaining -= 1
                changed = True
    return alloc


def _det(M) -> Poly:
    n = len(M)
    if n == 1:
        return M[0][0]
    ring = M[0][0].ring
    acc = ring.zero()
    for j in range(n):
        sub = [[M[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = M[0][j] * _det(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def ideal(ring: RingCtx, gens) -> IdealHandle:
    return IdealHandle(ring, list(gens))
