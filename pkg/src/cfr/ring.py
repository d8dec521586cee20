"""Ring contexts and exact multivariate polynomials.

A Poly is a list of (coefficient, exponent-vector) terms kept strictly
descending in the ring's monomial order with no zero coefficients; the
zero polynomial is the empty list and has degree -1 by convention.
"""

from __future__ import annotations

from .fields import FieldDesc, QQ, Scalar
from .orders import GREVLEX, MonomialOrder, PackSpec


class RingMismatch(ValueError):
    pass


class RingCtx:
    """A polynomial ring K[x_0..x_{n-1}] with a fixed monomial order and
    optional variable weights (used only by internal auxiliary rings)."""

    __slots__ = ("field", "numVars", "varNames", "order", "weights", "pack",
                 "_module_packs")

    def __init__(self, field: FieldDesc, varNames, order: MonomialOrder = GREVLEX,
                 weights=None):
        varNames = tuple(varNames)
        if len(set(varNames)) != len(varNames) or not varNames:
            raise ValueError("variable names must be nonempty and distinct")
        self.field = field
        self.numVars = len(varNames)
        self.varNames = varNames
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * self.numVars
        self.pack = PackSpec(self.numVars, order, self.weights)
        self._module_packs = {}

    def module_pack(self, rank: int) -> PackSpec:
        if rank not in self._module_packs:
            self._module_packs[rank] = PackSpec(self.numVars, self.order,
                                                self.weights, rank=rank)
        return self._module_packs[rank]

    def with_order(self, order: MonomialOrder) -> "RingCtx":
        if order == self.order:
            return self
        return RingCtx(self.field, self.varNames, order, self.weights)

    # -- constructors --------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, [])

    def one(self) -> "Poly":
        return self.constant(self.field.one)

    def constant(self, c) -> "Poly":
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, [(c, (0,) * self.numVars)])

    def var(self, i: int) -> "Poly":
        e = [0] * self.numVars
        e[i] = 1
        return Poly(self, [(self.field.one, tuple(e))])

    def gens(self):
        return [self.var(i) for i in range(self.numVars)]

    def monomial(self, c, exps) -> "Poly":
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, [(c, tuple(exps))])

    def from_terms(self, terms) -> "Poly":
        """Build a Poly from unsorted (coeff, exps) pairs, combining
        duplicates and dropping zeros."""
        acc = {}
        f = self.field
        for c, e in terms:
            e = tuple(e)
            if e in acc:
                acc[e] = f.add(acc[e], c)
            else:
                acc[e] = c
        pack = self.pack
        items = [(c, e) for e, c in acc.items() if not f.is_zero(c)]
        items.sort(key=lambda t: pack.key_of(t[1]), reverse=True)
        return Poly(self, items)

    def __eq__(self, other):
        return (isinstance(other, RingCtx) and other.field == self.field
                and other.varNames == self.varNames and other.order == self.order
                and other.weights == self.weights)

    def __hash__(self):
        return hash((self.field, self.varNames, self.order, self.weights))

    def __repr__(self):
        return f"{self.field}[{','.join(self.varNames)}]/{self.order}"


def ring_P(field: FieldDesc, n: int, stem: str = "x",
           order: MonomialOrder = GREVLEX) -> RingCtx:
    """Coordinate ring of P^n: K[stem0..stemn]."""
    return RingCtx(field, [f"{stem}{i}" for i in range(n + 1)], order)


class Poly:
    """Immutable multivariate polynomial in canonical sorted form."""

    __slots__ = ("ring", "terms", "_keys")

    def __init__(self, ring: RingCtx, terms):
        self.ring = ring
        self.terms = list(terms)
        self._keys = None

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def keys(self):
        if self._keys is None:
            pack = self.ring.pack
            self._keys = [pack.key_of(e) for _, e in self.terms]
        return self._keys

    def degree(self) -> int:
        """Total (weighted) degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        w = self.ring.weights
        return max(sum(e * wi for e, wi in zip(exps, w)) for _, exps in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        w = self.ring.weights
        degs = {sum(e * wi for e, wi in zip(exps, w)) for _, exps in self.terms}
        return len(degs) == 1

    def lead(self):
        """(coeff, exps) of the leading term."""
        return self.terms[0]

    def lc(self):
        return self.terms[0][0]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        f = self.ring.field
        inv = f.inv(self.lc())
        if inv == f.one:
            return self
        return Poly(self.ring, [(f.mul(inv, c), e) for c, e in self.terms])

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Poly"):
        if other.ring != self.ring:
            raise RingMismatch("polynomials from different ring contexts")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self.ring.from_terms(self.terms + other.terms)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.ring.field
        return self.ring.from_terms(self.terms + [(f.neg(c), e) for c, e in other.terms])

    def __neg__(self) -> "Poly":
        f = self.ring.field
        return Poly(self.ring, [(f.neg(c), e) for c, e in self.terms])

    def scale(self, c) -> "Poly":
        f = self.ring.field
        if f.is_zero(c):
            return self.ring.zero()
        return Poly(self.ring, [(f.mul(c, cc), e) for cc, e in self.terms])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.ring.field
        acc = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = f.mul(c1, c2)
                if e in acc:
                    acc[e] = f.add(acc[e], c)
                else:
                    acc[e] = c
        pack = self.ring.pack
        items = [(c, e) for e, c in acc.items() if not f.is_zero(c)]
        items.sort(key=lambda t: pack.key_of(t[1]), reverse=True)
        return Poly(self.ring, items)

    def mul_term(self, c, exps) -> "Poly":
        f = self.ring.field
        exps = tuple(exps)
        return Poly(self.ring, [(f.mul(c, cc), tuple(a + b for a, b in zip(e, exps)))
                                for cc, e in self.terms])

    def __pow__(self, n: int) -> "Poly":
        return self.power(n)

    def power(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.ring == self.ring
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.ring, tuple(self.terms)))

    # -- evaluation / substitution / derivatives -----------------------
    def evaluate(self, point):
        """Exact value at a vector of raw field elements."""
        if len(point) != self.ring.numVars:
            raise ValueError("point length must equal numVars")
        f = self.ring.field
        total = f.zero
        for c, exps in self.terms:
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = f.mul(v, pow_raw(f, x, e))
            total = f.add(total, v)
        return total

    def substitute(self, forms) -> "Poly":
        """Composition f(g_0,...,g_{n-1}) with g_i homogeneous forms of one
        common degree in a common target ring."""
        if len(forms) != self.ring.numVars:
            raise ValueError("need one form per variable")
        target = forms[0].ring
        degs = set()
        for g in forms:
            if g.ring != target:
                raise RingMismatch("substitution forms in different rings")
            if not g.is_homogeneous():
                raise ValueError("substitution forms must be homogeneous")
            if not g.is_zero():
                degs.add(g.degree())
        if len(degs) > 1:
            raise ValueError("substitution forms must share one degree")
        out = target.zero()
        pow_cache = [{0: target.one()} for _ in forms]

        def form_pow(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = form_pow(i, e - 1) * forms[i]
            return cache[e]

        for c, exps in self.terms:
            t = target.constant(c)
            for i, e in enumerate(exps):
                if e:
                    t = t * form_pow(i, e)
            out = out + t
        return out

    def partial(self, i: int) -> "Poly":
        if not (0 <= i < self.ring.numVars):
            raise IndexError("variable index out of range")
        f = self.ring.field
        terms = []
        for c, exps in self.terms:
            e = exps[i]
            if e:
                nc = f.mul(c, f.of_int(e))
                if not f.is_zero(nc):
                    nexps = list(exps)
                    nexps[i] = e - 1
                    terms.append((nc, tuple(nexps)))
        return self.ring.from_terms(terms)

    # -- serialization -------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        f = self.ring.field
        names = self.ring.varNames
        parts = []
        for c, exps in self.terms:
            factors = [f.coeff_str(c)]
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return "+".join(parts)

    __repr__ = __str__

    def to_json(self) -> dict:
        f = self.ring.field
        return {
            "field": {"char": f.characteristic},
            "vars": list(self.ring.varNames),
            "terms": [[f.coeff_str(c), list(e)] for c, e in self.terms],
        }

    @staticmethod
    def from_json(data: dict, ring: RingCtx | None = None) -> "Poly":
        field = FieldDesc(data["field"]["char"])
        if ring is None:
            ring = RingCtx(field, data["vars"])
        elif ring.field != field or list(ring.varNames) != list(data["vars"]):
            raise RingMismatch("JSON polynomial does not match the given ring")
        return ring.from_terms(
            (ring.field.coeff_from_str(c), tuple(e)) for c, e in data["terms"])


def pow_raw(field: FieldDesc, x, e: int):
    p = field.characteristic
    if p:
        return pow(x, e, p)
    return x ** e


def polys_to_pairs(polys, pack: PackSpec):
    """Convert Polys to the engine's (keys, coeffs) parallel-list form."""
    out = []
    for g in polys:
        pairs = sorted(((pack.key_of(e), c) for c, e in g.terms), reverse=True)
        out.append(([k for k, _ in pairs], [c for _, c in pairs]))
    return out


def pairs_to_poly(ring: RingCtx, keys, coeffs) -> Poly:
    pack = ring.pack
    return Poly(ring, [(c, pack.exps_of_key(k)) for k, c in zip(keys, coeffs)])
