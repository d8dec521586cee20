# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled reduction kernel: same session API as ``_corepy`` for prime
fields whose packed monomial keys fit in 128 bits.

Keys travel as Python ints at the API boundary and as unsigned __int128
inside; coefficients are 64-bit residues (products stay below 2^62 for
the admitted primes < 2^31)."""

from libc.stdlib cimport malloc, realloc, free

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef long long i64
ctypedef unsigned long long u64

KERNEL_NAME = "cython"

cdef u64 LOW64 = 0xFFFFFFFFFFFFFFFFULL

cdef inline u128 py_to_u128(object x):
    return ((<u128> <u64> (x >> 64)) << 64) | <u128> <u64> (x & 0xFFFFFFFFFFFFFFFF)

cdef inline object u128_to_py(u128 x):
    cdef u64 hi = <u64> (x >> 64)
    cdef u64 lo = <u64> (x & <u128> LOW64)
    if hi:
        return (int(hi) << 64) | int(lo)
    return int(lo)

cdef inline i64 mulmod(i64 a, i64 b, i64 p):
    return (a * b) % p

cdef i64 powmod(i64 a, i64 e, i64 p):
    cdef i64 acc = 1
    a %= p
    while e:
        if e & 1:
            acc = (acc * a) % p
        a = (a * a) % p
        e >>= 1
    return acc


cdef class CVec:
    """A packed polynomial as parallel C arrays (keys desc, coeffs)."""
    cdef u128 *k
    cdef i64 *c
    cdef Py_ssize_t n

    def __dealloc__(self):
        if self.k != NULL:
            free(self.k)
        if self.c != NULL:
            free(self.c)

cdef CVec cvec_alloc(Py_ssize_t n):
    cdef CVec v = CVec.__new__(CVec)
    v.n = n
    v.k = <u128 *> malloc(max(n, 1) * sizeof(u128))
    v.c = <i64 *> malloc(max(n, 1) * sizeof(i64))
    if v.k == NULL or v.c == NULL:
        raise MemoryError()
    return v

cdef CVec cvec_from_lists(list keys, list coeffs):
    cdef Py_ssize_t n = len(keys)
    cdef CVec v = cvec_alloc(n)
    cdef Py_ssize_t i
    for i in range(n):
        v.k[i] = py_to_u128(keys[i])
        v.c[i] = coeffs[i]
    return v

cdef tuple cvec_to_lists(CVec v):
    cdef list keys = []
    cdef list coeffs = []
    cdef Py_ssize_t i
    for i in range(v.n):
        keys.append(u128_to_py(v.k[i]))
        coeffs.append(int(v.c[i]))
    return keys, coeffs


cdef class CachedElem:
    """C-side cache of a BasisElem: poly arrays, lead data, tracker."""
    cdef CVec poly
    cdef CVec track
    cdef u128 lead_key
    cdef u128 lead_dmask
    cdef bint has_track


cdef CVec c_sub_scaled(CVec a, Py_ssize_t a0, CVec b, i64 c, u128 inc, i64 p):
    """a[a0:] - c * x^inc * b, merged; c already reduced mod p."""
    cdef Py_ssize_t na = a.n, nb = b.n
    cdef CVec r = cvec_alloc((na - a0) + nb)
    cdef Py_ssize_t i = a0, j = 0, m = 0
    cdef u128 ka, kb
    cdef i64 v
    while i < na and j < nb:
        ka = a.k[i]
        kb = b.k[j] + inc
        if ka > kb:
            r.k[m] = ka; r.c[m] = a.c[i]; m += 1; i += 1
        elif ka < kb:
            v = (-c * b.c[j]) % p
            if v < 0:
                v += p
            if v:
                r.k[m] = kb; r.c[m] = v; m += 1
            j += 1
        else:
            v = (a.c[i] - c * b.c[j]) % p
            if v < 0:
                v += p
            if v:
                r.k[m] = ka; r.c[m] = v; m += 1
            i += 1; j += 1
    while i < na:
        r.k[m] = a.k[i]; r.c[m] = a.c[i]; m += 1; i += 1
    while j < nb:
        v = (-c * b.c[j]) % p
        if v < 0:
            v += p
        if v:
            r.k[m] = b.k[j] + inc; r.c[m] = v; m += 1
        j += 1
    r.n = m
    return r


cdef class ReducerSession:
    """Compiled normal-form engine bound to one (pack, field) pair."""
    cdef public object pack
    cdef public object field
    cdef i64 p
    # unpack plan for keys: kind 1=deg(skip) 2=cexp 3=exp per field, MSB first
    cdef int nfields, nvars
    cdef int *plan_kind
    cdef int *plan_arg
    cdef u128 dmask_top
    cdef bint track_ok
    cdef object pyfallback

    def __init__(self, pack, field):
        self.pack = pack
        self.field = field
        self.p = field.characteristic
        if self.p <= 0 or pack.rank != 0 or pack.key_bits > 128:
            raise ValueError("unsupported pack/field for the compiled kernel")
        self.nfields = pack.nfields
        self.nvars = pack.nvars
        self.plan_kind = <int *> malloc(self.nfields * sizeof(int))
        self.plan_arg = <int *> malloc(self.nfields * sizeof(int))
        cdef int i = 0
        for kind, arg in pack._plan:
            if kind == "deg":
                self.plan_kind[i] = 1
                self.plan_arg[i] = -1
            elif kind == "cexp":
                self.plan_kind[i] = 2
                self.plan_arg[i] = arg
            else:  # "exp"
                self.plan_kind[i] = 3
                self.plan_arg[i] = arg
            i += 1
        self.dmask_top = py_to_u128(pack.dmask_top)
        # trackers live one 16-bit field wider than ring keys
        self.track_ok = pack.key_bits + 16 <= 128
        self.pyfallback = None

    def __dealloc__(self):
        if self.plan_kind != NULL:
            free(self.plan_kind)
        if self.plan_arg != NULL:
            free(self.plan_arg)

    cdef object _py(self):
        if self.pyfallback is None:
            from ._corepy import ReducerSession as PyReducerSession
            self.pyfallback = PyReducerSession(self.pack, self.field)
        return self.pyfallback

    cdef u128 _dmask_of_key(self, u128 key):
        cdef int f, a
        cdef u128 dm = 0
        cdef u64 val
        cdef int exps[16]
        for f in range(self.nvars):
            exps[f] = 0
        cdef int shift
        for f in range(self.nfields):
            shift = (self.nfields - 1 - f) * 16
            val = <u64> ((key >> shift) & <u128> 0xFFFF)
            if self.plan_kind[f] == 2:
                exps[self.plan_arg[f]] = 0x7FFF - <int> val
            elif self.plan_kind[f] == 3:
                exps[self.plan_arg[f]] = <int> val
        for f in range(self.nvars):
            dm = (dm << 16) | <u128> exps[f]
        return dm

    # -- public API ----------------------------------------------------
    def sub_scaled(self, akeys, acoeffs, bkeys, bcoeffs, c, inc):
        # Module-tracker keys may exceed 128 bits even when the ring pack
        # fits; fall back to the Python merge for those.
        cdef CVec a, b, r
        cdef u128 inc128
        try:
            a = cvec_from_lists(list(akeys), list(acoeffs))
            b = cvec_from_lists(list(bkeys), list(bcoeffs))
            inc128 = py_to_u128(inc)
        except OverflowError:
            return self._py().sub_scaled(akeys, acoeffs, bkeys, bcoeffs,
                                         c, inc)
        r = c_sub_scaled(a, 0, b, <i64> (c % self.p), inc128, self.p)
        return cvec_to_lists(r)

    def scale(self, keys, coeffs, c):
        cdef i64 cc = c % self.p
        cdef i64 p = self.p
        return keys, [(cc * v) % p for v in coeffs]

    def coeff_inv(self, c):
        return powmod(c, self.p - 2, self.p)

    def mul_poly_track(self, gkeys, gcoeffs, tkeys, tcoeffs, ring_key_one):
        if not self.track_ok:
            return self._py().mul_poly_track(gkeys, gcoeffs, tkeys, tcoeffs,
                                             ring_key_one)
        cdef CVec g = cvec_from_lists(list(gkeys), list(gcoeffs))
        cdef CVec t = cvec_from_lists(list(tkeys), list(tcoeffs))
        cdef u128 one = py_to_u128(ring_key_one)
        cdef dict acc = {}
        cdef Py_ssize_t i, j
        cdef u128 inc, k
        cdef i64 p = self.p, gc
        # accumulate in a dict keyed by the Python form of the key
        cdef object kk
        for i in range(g.n):
            inc = g.k[i] - one
            gc = g.c[i]
            for j in range(t.n):
                k = t.k[j] + inc
                kk = u128_to_py(k)
                acc[kk] = (acc.get(kk, 0) + gc * t.c[j]) % p
        items = sorted(((k2, v) for k2, v in acc.items() if v), reverse=True)
        return [k2 for k2, _ in items], [v for _, v in items]

    cdef CachedElem _cache(self, object g):
        cdef CachedElem ce = getattr(g, "fast", None)
        if ce is not None:
            return ce
        ce = CachedElem.__new__(CachedElem)
        ce.poly = cvec_from_lists(g.keys, g.coeffs)
        ce.lead_key = ce.poly.k[0]
        ce.lead_dmask = py_to_u128(g.lead_dmask)
        tr = g.track
        if tr is not None and self.track_ok:
            ce.track = cvec_from_lists(tr[0], tr[1])
            ce.has_track = True
        else:
            ce.track = None
            ce.has_track = False
        g.fast = ce
        return ce

    def normal_form(self, keys, coeffs, basis, track=None, full=True):
        if track is not None and not self.track_ok:
            return self._py().normal_form(keys, coeffs, basis, track=track,
                                          full=full)
        cdef Py_ssize_t nb = len(basis)
        cdef list caches = [self._cache(g) for g in basis]
        cdef CVec w = cvec_from_lists(list(keys), list(coeffs))
        cdef CVec tw = None
        cdef bint has_tw = track is not None
        if has_tw:
            tw = cvec_from_lists(list(track[0]), list(track[1]))
        cdef CVec outp = cvec_alloc(16)
        cdef Py_ssize_t outn = 0, outcap = 16
        cdef Py_ssize_t i0 = 0, bi
        cdef u128 lead, ldm, inc, top = self.dmask_top
        cdef CachedElem red, ce
        cdef i64 c, p = self.p
        while i0 < w.n:
            lead = w.k[i0]
            ldm = self._dmask_of_key(lead)
            red = None
            for bi in range(nb):
                ce = <CachedElem> caches[bi]
                if (((ldm | top) - ce.lead_dmask) & top) == top:
                    red = ce
                    break
            if red is None:
                if outn == outcap:
                    outcap *= 2
                    outp.k = <u128 *> realloc(outp.k, outcap * sizeof(u128))
                    outp.c = <i64 *> realloc(outp.c, outcap * sizeof(i64))
                    if outp.k == NULL or outp.c == NULL:
                        raise MemoryError()
                outp.k[outn] = w.k[i0]
                outp.c[outn] = w.c[i0]
                outn += 1
                i0 += 1
                if not full:
                    while i0 < w.n:
                        if outn == outcap:
                            outcap *= 2
                            outp.k = <u128 *> realloc(outp.k, outcap * sizeof(u128))
                            outp.c = <i64 *> realloc(outp.c, outcap * sizeof(i64))
                            if outp.k == NULL or outp.c == NULL:
                                raise MemoryError()
                        outp.k[outn] = w.k[i0]
                        outp.c[outn] = w.c[i0]
                        outn += 1
                        i0 += 1
                    break
                continue
            c = w.c[i0]
            if red.poly.c[0] != 1:
                c = mulmod(c, powmod(red.poly.c[0], p - 2, p), p)
            inc = lead - red.lead_key
            w = c_sub_scaled(w, i0, red.poly, c, inc, p)
            i0 = 0
            if has_tw:
                if red.has_track:
                    tw = c_sub_scaled(tw, 0, red.track, c, inc, p)
                # an untracked reducer contributes nothing to the tracker
        outp.n = outn
        out = cvec_to_lists(outp)
        if has_tw:
            tk, tc = cvec_to_lists(tw)
            return out[0], out[1], (tk, tc)
        return out[0], out[1], track
