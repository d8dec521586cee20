"""Buchberger engine: reduced Groebner bases, normal forms, syzygies.

Pair handling uses the sugar-degree strategy with the product and chain
criteria; every choice is deterministically tie-broken so repeated runs
are byte-identical.  Syzygies of the input generators are collected by
cofactor tracking through the same run (zero reductions, Koszul relations
of product-criterion skips, and redundancy relations of the inputs
against the final basis).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from ._corepy import BasisElem
from .kernel import make_session
from .orders import PackSpec
from .ring import Poly, RingCtx, RingMismatch, pairs_to_poly, polys_to_pairs


@dataclass
class ModuleElem:
    """An element of a free module R^rank as a vector of Polys."""

    components: list

    @property
    def rank(self):
        return len(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def degree(self):
        return max((c.degree() for c in self.components), default=-1)


class GroebnerBasis:
    """Reduced Groebner basis with its packed form cached for reuse."""

    def __init__(self, ring: RingCtx, elements, pack: PackSpec, session, basis_elems):
        self.ring = ring
        self.order = pack.order
        self.elements = elements  # list[Poly], monic, auto-reduced, lead desc
        self.pack = pack
        self._session = session
        self._basis = basis_elems

    def normal_form(self, f: Poly) -> Poly:
        if f.ring.field != self.ring.field or f.ring.varNames != self.ring.varNames:
            raise RingMismatch("normal form of polynomial from a different ring")
        (pair,) = polys_to_pairs([f], self.pack)
        keys, coeffs, _ = self._session.normal_form(pair[0], pair[1], self._basis)
        return pairs_to_poly(self.ring, keys, coeffs)

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def lead_exps(self):
        return [g.terms[0][1] for g in self.elements]

    def is_unit_ideal(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].degree() == 0


def _lcm_exps(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _wdeg(exps, weights):
    return sum(e * w for e, w in zip(exps, weights))


class _Run:
    """One extended-Buchberger run over packed polynomials."""

    def __init__(self, pack: PackSpec, field, gens_pairs, track_init=None,
                 collect_syzygies=False):
        self.pack = pack
        self.field = field
        self.session = make_session(pack, field)
        # trackers live in a module pack sharing the ring field layout
        self.tracking = track_init is not None
        self.collect = collect_syzygies and self.tracking
        self.syzygies = []  # tracker polys (keys, coeffs)
        self.basis = []
        self.pairs = []  # heap of (sugar, lcm_key, i, j, lcm_exps)
        self.done = set()
        self.weights = pack.weights
        self.ring_key_one = pack.key_of((0,) * pack.nvars)
        self._gens_pairs = gens_pairs
        self._track_init = track_init

    # -- setup ----------------------------------------------------------
    def _new_elem(self, keys, coeffs, track, sugar=None):
        f = self.field
        lc = coeffs[0]
        if lc != f.one:
            inv = f.inv(lc)
            keys, coeffs = self.session.scale(keys, coeffs, inv)
            if track is not None:
                track = self.session.scale(track[0], track[1], inv)
        exps = self.pack.exps_of_key(keys[0])
        dm = self.pack.dmask_of(exps)
        if sugar is None:
            sugar = max(_wdeg(self.pack.exps_of_key(k), self.weights) for k in keys)
        return BasisElem(keys, coeffs, dm, exps, sugar, track)

    def _add_pairs(self, j):
        gj = self.basis[j]
        for i in range(j):
            gi = self.basis[i]
            lcm = _lcm_exps(gi.lead_exps, gj.lead_exps)
            lcm_key = self.pack.key_of(lcm)
            sugar = max(gi.sugar + _wdeg(lcm, self.weights) - _wdeg(gi.lead_exps, self.weights),
                        gj.sugar + _wdeg(lcm, self.weights) - _wdeg(gj.lead_exps, self.weights))
            heapq.heappush(self.pairs, (sugar, lcm_key, i, j, lcm))

    # -- syzygy helpers --------------------------------------------------
    def _koszul(self, gi: BasisElem, gj: BasisElem):
        s = self.session
        a = s.mul_poly_track(gj.keys, gj.coeffs, gi.track[0], gi.track[1],
                             self.ring_key_one)
        b = s.mul_poly_track(gi.keys, gi.coeffs, gj.track[0], gj.track[1],
                             self.ring_key_one)
        k, c = s.sub_scaled(a[0], a[1], b[0], b[1], self.field.one, 0)
        if k:
            self.syzygies.append((k, c))

    # -- main loop -------------------------------------------------------
    def run(self):
        pack, f, s = self.pack, self.field, self.session
        for idx, (keys, coeffs) in enumerate(self._gens_pairs):
            track = self._track_init[idx] if self.tracking else None
            if not keys:
                if self.collect and track is not None and track[0]:
                    self.syzygies.append(track)
                continue
            self.basis.append(self._new_elem(list(keys), list(coeffs), track))
            self._add_pairs(len(self.basis) - 1)

        while self.pairs:
            sugar, lcm_key, i, j, lcm = heapq.heappop(self.pairs)
            self.done.add((i, j))
            gi, gj = self.basis[i], self.basis[j]
            # product criterion
            if all(a + b == l for a, b, l in zip(gi.lead_exps, gj.lead_exps, lcm)):
                if self.collect:
                    self._koszul(gi, gj)
                continue
            # chain criterion: a third element dividing the lcm whose pairs
            # with both i and j are already handled
            skip = False
            top = pack.dmask_top
            lcm_dm = pack.dmask_of(lcm)
            for k in range(len(self.basis)):
                if k == i or k == j:
                    continue
                gk = self.basis[k]
                if ((lcm_dm | top) - gk.lead_dmask) & top == top:
                    pik = (min(i, k), max(i, k))
                    pjk = (min(j, k), max(j, k))
                    if pik in self.done and pjk in self.done:
                        skip = True
                        break
            if skip:
                continue
            # S-polynomial
            inc_i = pack.key_of(lcm) - gi.lead_key
            inc_j = pack.key_of(lcm) - gj.lead_key
            sk, sc = s.sub_scaled([], [], gi.keys, gi.coeffs, f.neg(f.one), inc_i)
            sk, sc = s.sub_scaled(sk, sc, gj.keys, gj.coeffs, f.one, inc_j)
            track = None
            if self.tracking:
                tk, tc = s.sub_scaled([], [], gi.track[0], gi.track[1],
                                      f.neg(f.one), inc_i)
                track = s.sub_scaled(tk, tc, gj.track[0], gj.track[1], f.one, inc_j)
            rk, rc, track = s.normal_form(sk, sc, self.basis, track=track)
            if rk:
                self.basis.append(self._new_elem(rk, rc, track, sugar=sugar))
                self._add_pairs(len(self.basis) - 1)
            elif self.collect and track is not None and track[0]:
                self.syzygies.append(track)
        self._interreduce()
        if self.collect:
            self._input_redundancy_syzygies()
        return self

    def _interreduce(self):
        # minimalize by lead divisibility (prefer smaller lead keys)
        order = sorted(range(len(self.basis)), key=lambda t: self.basis[t].lead_key)
        kept, dropped = [], []
        top = self.pack.dmask_top
        for t in order:
            e = self.basis[t]
            if any(((e.lead_dmask | top) - k.lead_dmask) & top == top for k in kept):
                dropped.append(e)
            else:
                kept.append(e)
        # tail-reduce each kept element against the others
        reduced = []
        for pos, e in enumerate(kept):
            others = [k for q, k in enumerate(kept) if q != pos]
            rk, rc, track = self.session.normal_form(e.keys, e.coeffs, others,
                                                     track=e.track)
            reduced.append(self._new_elem(rk, rc, track, sugar=e.sugar))
        reduced.sort(key=lambda b: b.lead_key, reverse=True)
        self.basis = reduced
        if self.collect:
            for e in dropped:
                _, _, track = self.session.normal_form(e.keys, e.coeffs, self.basis,
                                                       track=e.track)
                if track is not None and track[0]:
                    self.syzygies.append(track)

    def _input_redundancy_syzygies(self):
        for idx, (keys, coeffs) in enumerate(self._gens_pairs):
            if not keys:
                continue
            track = self._track_init[idx]
            rk, rc, track = self.session.normal_form(list(keys), list(coeffs),
                                                     self.basis, track=track)
            if rk:
                raise AssertionError("input generator did not reduce to zero")
            if track is not None and track[0]:
                self.syzygies.append(track)


def _prepare(gens, order):
    if not gens:
        raise ValueError("empty generator list")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators from different ring contexts")
        if not g.is_homogeneous():
            raise ValueError("engine handles homogeneous input only")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [ring.from_terms(g.terms) for g in gens]
    return ring, gens


def groebner(gens, order=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens."""
    ring, gens = _prepare(gens, order)
    pack = ring.pack
    run = _Run(pack, ring.field, polys_to_pairs(gens, pack)).run()
    elements = [pairs_to_poly(ring, b.keys, b.coeffs) for b in run.basis]
    return GroebnerBasis(ring, elements, pack, run.session, run.basis)


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    return gb.normal_form(f)


def _unit_tracker(ring, rank, comp, mpack):
    key = mpack.key_of((0,) * ring.numVars, comp)
    return ([key], [ring.field.one])


def _tracker_to_module_elem(ring, mpack, rank, track) -> ModuleElem:
    per_comp = {c: [] for c in range(rank)}
    for k, coeff in zip(track[0], track[1]):
        exps, comp = mpack.exps_of_key(k)
        per_comp[comp].append((coeff, exps))
    return ModuleElem([ring.from_terms(per_comp[c]) for c in range(rank)])


def syzygies_with_gb(gens):
    """(GroebnerBasis, generating set of the first syzygy module)."""
    ring, gens = _prepare(gens, None)
    pack = ring.pack
    rank = len(gens)
    mpack = ring.module_pack(rank)
    track_init = [_unit_tracker(ring, rank, i, mpack) for i in range(rank)]
    run = _Run(pack, ring.field, polys_to_pairs(gens, pack),
               track_init=track_init, collect_syzygies=True).run()
    elements = [pairs_to_poly(ring, b.keys, b.coeffs) for b in run.basis]
    gb = GroebnerBasis(ring, elements, pack, run.session, run.basis)
    seen = set()
    out = []
    for track in run.syzygies:
        sig = tuple(track[0]), tuple(track[1])
        if sig in seen:
            continue
        seen.add(sig)
        elem = _tracker_to_module_elem(ring, mpack, rank, track)
        if not elem.is_zero():
            out.append(elem)
    return gb, out


def syzygies(gens):
    """Generating set of the first syzygy module of gens."""
    return syzygies_with_gb(gens)[1]


def quotient_generators(igens, g: Poly):
    """Generators of (I : g) via cofactor tracking of the g column."""
    ring, gens = _prepare(list(igens) + [g], None)
    pack = ring.pack
    mpack = ring.module_pack(1)
    zero = ([], [])
    track_init = [zero] * (len(gens) - 1) + [_unit_tracker(ring, 1, 0, mpack)]
    run = _Run(pack, ring.field, polys_to_pairs(gens, pack),
               track_init=track_init, collect_syzygies=True).run()
    out = []
    seen = set()
    for track in run.syzygies:
        elem = _tracker_to_module_elem(ring, mpack, 1, track).components[0]
        if not elem.is_zero():
            key = tuple((str(c), e) for c, e in elem.monic().terms)
            if key not in seen:
                seen.add(key)
                out.append(elem)
    return out
