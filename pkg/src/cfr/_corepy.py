"""Pure-Python reduction kernel.

Polynomials enter the kernel as parallel lists (keys, coeffs): packed
order keys descending, raw coefficients.  The compiled twin in
``_corefast`` implements the same session API for prime fields; this
module is the fallback and the only path for characteristic 0.
"""

from __future__ import annotations

KERNEL_NAME = "python"


class BasisElem:
    """A basis polynomial with cached lead data and optional tracker."""

    __slots__ = ("keys", "coeffs", "lead_key", "lead_dmask", "lead_exps",
                 "sugar", "track", "fast")

    def __init__(self, keys, coeffs, lead_dmask, lead_exps, sugar, track=None):
        self.keys = keys
        self.coeffs = coeffs
        self.lead_key = keys[0]
        self.lead_dmask = lead_dmask
        self.lead_exps = lead_exps
        self.sugar = sugar
        self.track = track
        self.fast = None  # compiled-kernel cache slot


class ReducerSession:
    """Normal-form engine bound to one (pack, field) pair."""

    def __init__(self, pack, field):
        self.pack = pack
        self.field = field
        self.p = field.characteristic

    # -- low-level list arithmetic -------------------------------------
    def sub_scaled(self, akeys, acoeffs, bkeys, bcoeffs, c, inc):
        """A - c * x^inc * B for sorted packed polys (inc a key increment)."""
        p = self.p
        na, nb = len(akeys), len(bkeys)
        rk, rc = [], []
        i = j = 0
        if p:
            while i < na and j < nb:
                ka = akeys[i]
                kb = bkeys[j] + inc
                if ka > kb:
                    rk.append(ka); rc.append(acoeffs[i]); i += 1
                elif ka < kb:
                    rk.append(kb); rc.append((-c * bcoeffs[j]) % p); j += 1
                else:
                    v = (acoeffs[i] - c * bcoeffs[j]) % p
                    if v:
                        rk.append(ka); rc.append(v)
                    i += 1; j += 1
            while i < na:
                rk.append(akeys[i]); rc.append(acoeffs[i]); i += 1
            while j < nb:
                rk.append(bkeys[j] + inc); rc.append((-c * bcoeffs[j]) % p); j += 1
        else:
            while i < na and j < nb:
                ka = akeys[i]
                kb = bkeys[j] + inc
                if ka > kb:
                    rk.append(ka); rc.append(acoeffs[i]); i += 1
                elif ka < kb:
                    rk.append(kb); rc.append(-c * bcoeffs[j]); j += 1
                else:
                    v = acoeffs[i] - c * bcoeffs[j]
                    if v:
                        rk.append(ka); rc.append(v)
                    i += 1; j += 1
            while i < na:
                rk.append(akeys[i]); rc.append(acoeffs[i]); i += 1
            while j < nb:
                rk.append(bkeys[j] + inc); rc.append(-c * bcoeffs[j]); j += 1
        return rk, rc

    def scale(self, keys, coeffs, c):
        p = self.p
        if p:
            return keys, [(c * v) % p for v in coeffs]
        return keys, [c * v for v in coeffs]

    def coeff_inv(self, c):
        return self.field.inv(c)

    # -- normal form ---------------------------------------------------
    def normal_form(self, keys, coeffs, basis, track=None, full=True):
        """Full (or lead-only) reduction of (keys, coeffs) by basis.

        basis is a list of BasisElem whose trackers, when track is given,
        are (keys, coeffs) pairs in a module pack sharing low-order ring
        fields with this pack.  Returns (keys, coeffs, track).
        """
        pack = self.pack
        dmask_of = pack.dmask_of
        exps_of = pack.exps_of_key
        module_div = pack.module_divides if pack.rank else None
        top = pack.dmask_top
        p = self.p
        outk, outc = [], []
        wk, wc = list(keys), list(coeffs)
        i0 = 0
        while i0 < len(wk):
            lead_key = wk[i0]
            if pack.rank:
                lexp, lcomp = exps_of(lead_key)
                ldm = dmask_of(lexp, lcomp)
            else:
                lexp = exps_of(lead_key)
                ldm = dmask_of(lexp)
            red = None
            for g in basis:
                gd = g.lead_dmask
                if pack.rank:
                    if module_div(gd, ldm):
                        red = g
                        break
                elif ((ldm | top) - gd) & top == top:
                    red = g
                    break
            if red is None:
                outk.append(wk[i0]); outc.append(wc[i0])
                i0 += 1
                if not full:
                    outk.extend(wk[i0:]); outc.extend(wc[i0:])
                    return outk, outc, track
                continue
            c = wc[i0] if p else wc[i0] / red.coeffs[0]
            if p and red.coeffs[0] != 1:
                c = (c * pow(red.coeffs[0], p - 2, p)) % p
            inc = lead_key - red.lead_key
            wk, wc = self.sub_scaled(wk[i0:], wc[i0:], red.keys, red.coeffs, c, inc)
            i0 = 0
            if track is not None:
                tk, tc = track
                gtk, gtc = red.track
                track = self.sub_scaled(tk, tc, gtk, gtc, c, inc)
        return outk, outc, track

    def mul_poly_track(self, gkeys, gcoeffs, tkeys, tcoeffs, ring_key_one):
        """(ring poly g) * (tracker t): used for Koszul syzygies."""
        p = self.p
        acc = {}
        for gk, gc in zip(gkeys, gcoeffs):
            inc = gk - ring_key_one
            if p:
                for tk, tc in zip(tkeys, tcoeffs):
                    k = tk + inc
                    acc[k] = (acc.get(k, 0) + gc * tc) % p
            else:
                for tk, tc in zip(tkeys, tcoeffs):
                    k = tk + inc
                    acc[k] = acc.get(k, 0) + gc * tc
        items = sorted(((k, v) for k, v in acc.items() if v), reverse=True)
        return [k for k, _ in items], [v for _, v in items]
