"""Sections of normal sheaves via graded module presentations.

For a surface S = V(I) in P^5 and a cubic F through S, the normal sheaf
of S inside X = V(F) has global sections

    H^0(N_{S/X}) = Hom_A(I/(I^2 + (F)), A)_0,      A = R/I.

The conormal module is presented by the generators of I with relations
the first syzygies (reduced mod I) plus, when F is given, the
coefficient vector of F in the generators.  Graded homs into A are then
a finite kernel computation over the ground field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .gb import GroebnerBasis, syzygies
from .ideals import IdealHandle, ideal
from .linalg import field_kernel, matrix_rank
from .maps import monomials_of_degree
from .ring import Poly, RingCtx


@dataclass
class ModulePresentation:
    """Graded A-module coker(sum_j A(-e_j) -> sum_i A(-g_i))."""
    ring: RingCtx
    quotient_gb: GroebnerBasis          # Groebner basis of I, A = R/I
    gen_degrees: List[int]
    relations: List[List[Poly]]         # columns; entries normal mod I

    @property
    def rank_bound(self) -> int:
        return len(self.gen_degrees)

    def is_free_presentation(self) -> bool:
        """True when every relation column reduced to zero mod I."""
        return not self.relations


def standard_monomials(gb: GroebnerBasis, d: int) -> List[tuple]:
    """Monomial basis of (R/I)_d: degree-d monomials outside the lead
    ideal of the Groebner basis."""
    ring = gb.ring
    leads = [e for _, e in (g.lead() for g in gb.elements)]
    out = []
    for exps in monomials_of_degree(ring.numVars, d):
        if not any(all(a >= b for a, b in zip(exps, le)) for le in leads):
            out.append(exps)
    return out


def express_in_generators(gens: Sequence[Poly], F: Poly):
    """Constant coefficients c with F = sum c_i * gens_i, or None."""
    ring = F.ring
    fld = ring.field
    monoms = sorted({e for g in list(gens) + [F] for _, e in g.terms})
    pos = {e: i for i, e in enumerate(monoms)}
    cols = []
    for g in list(gens) + [F]:
        v = [fld.zero] * len(monoms)
        for c, e in g.terms:
            v[pos[e]] = c
        cols.append(v)
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(len(monoms))]
    for v in field_kernel(fld, rows, ncols=len(cols)):
        if not fld.is_zero(v[-1]):
            inv = fld.neg(fld.inv(v[-1]))
            return [fld.mul(inv, c) for c in v[:-1]]
    return None


def conormal_presentation(I: IdealHandle,
                          F: Optional[Poly] = None) -> ModulePresentation:
    """Presentation of I/(I^2) -- or of I/(I^2 + (F)) when F is given --
    as a graded module over A = R/I."""
    gens = list(I.gens)
    gb = I.groebner()
    cols = []
    for s in syzygies(gens):
        col = [gb.normal_form(c) for c in s.components]
        if any(not c.is_zero() for c in col):
            cols.append(col)
    if F is not None:
        coeffs = express_in_generators(gens, F)
        if coeffs is None:
            raise ValueError("F is not a combination of the generators")
        ring = I.ring
        fld = ring.field
        col = [ring.constant(c) if not fld.is_zero(c) else ring.zero()
               for c in coeffs]
        cols.append(col)
    return ModulePresentation(
        ring=I.ring,
        quotient_gb=gb,
        gen_degrees=[g.degree() for g in gens],
        relations=cols,
    )


def hom_into_A_degree(pres: ModulePresentation, d: int = 0) -> int:
    """dim_k Hom_A(M, A)_d for the presented module M.

    A degree-d hom sends the i-th generator to an element of A in degree
    g_i + d and must kill every relation; the constraints are linear in
    the coordinates of the images over the standard monomial bases."""
    ring = pres.ring
    fld = ring.field
    gb = pres.quotient_gb
    bases = []
    offsets = [0]
    for g in pres.gen_degrees:
        deg = g + d
        basis = standard_monomials(gb, deg) if deg >= 0 else []
        bases.append(basis)
        offsets.append(offsets[-1] + len(basis))
    total = offsets[-1]
    if total == 0:
        return 0
    rows = []
    for col in pres.relations:
        # target degree of this relation's constraint
        tdeg = None
        for i, r in enumerate(col):
            if not r.is_zero():
                tdeg = r.degree() + pres.gen_degrees[i] + d
                break
        if tdeg is None:
            continue
        target = standard_monomials(gb, tdeg)
        tpos = {e: k for k, e in enumerate(target)}
        block = [[fld.zero] * total for _ in target]
        for i, r in enumerate(col):
            if r.is_zero():
                continue
            for k, exps in enumerate(bases[i]):
                prod = gb.normal_form(r * ring.monomial(fld.one, exps))
                for c, e in prod.terms:
                    block[tpos[e]][offsets[i] + k] = c
        rows.extend(block)
    if not rows:
        return total
    char = fld.characteristic
    if char:
        raw = [[int(x) for x in row] for row in rows]
    else:
        raw = [[x for x in row] for row in rows]
    return total - matrix_rank(raw, char)


def h0_normal(surface_ideal: IdealHandle,
              F: Optional[Poly] = None) -> int:
    """h^0 of the normal sheaf of V(I) in P^5 (F = None) or in the
    cubic hypersurface V(F) containing it."""
    return hom_into_A_degree(conormal_presentation(surface_ideal, F), 0)
