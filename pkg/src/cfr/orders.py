"""Monomial orders realized as integer packings.

A monomial is handled in two packed integer forms:

* ``key``    -- order-specific packing such that plain integer comparison
                agrees with the monomial order, and multiplication is
                ``key(a*b) = key(a) + key(b) - key(1)``.
* ``dmask``  -- plain big-endian 16-bit exponent fields, used for the
                SWAR divisibility test.

Supported orders: graded reverse lexicographic (GrevLex), lexicographic
(Lex), and the block order BlockElim(k) eliminating the first k variables
(grevlex within each block).  Rings may carry a weight vector; degree
fields use weighted degrees.  A block whose variables all have weight 0
falls back to direct per-exponent fields (lex within the block), which
keeps the auxiliary degree-0 variable of the intersection trick ordered
sensibly.

Free-module monomials prepend a component field; comparison is
position-over-term with lower component index dominating.
"""

from __future__ import annotations

from dataclasses import dataclass

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
EXP_MAX = (1 << 15) - 1  # top bit of each field reserved for the SWAR test


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "GrevLex" | "Lex" | "BlockElim"
    k: int = 0  # eliminated block size for BlockElim

    def __post_init__(self):
        if self.kind not in ("GrevLex", "Lex", "BlockElim"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "BlockElim" and self.k <= 0:
            raise ValueError("BlockElim requires k > 0")

    def __repr__(self):
        return self.kind if self.kind != "BlockElim" else f"BlockElim({self.k})"


GREVLEX = MonomialOrder("GrevLex")
LEX = MonomialOrder("Lex")


def block_elim(k: int) -> MonomialOrder:
    return MonomialOrder("BlockElim", k)


class PackSpec:
    """Packing of exponent vectors (optionally with a module component)
    into order-comparable integers."""

    def __init__(self, nvars: int, order: MonomialOrder, weights=None, rank: int = 0):
        if order.kind == "BlockElim" and not (0 < order.k < nvars):
            raise ValueError("BlockElim(k) requires 0 < k < numVars")
        self.nvars = nvars
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        if len(self.weights) != nvars:
            raise ValueError("weight vector length mismatch")
        self.rank = rank  # 0 for ring monomials, >0 for module monomials

        if order.kind == "Lex":
            blocks = [list(range(nvars))]
            self._block_layout = [("lex", blocks[0])]
        elif order.kind == "GrevLex":
            self._block_layout = [self._grev_or_lex(list(range(nvars)))]
        else:
            b1 = list(range(order.k))
            b2 = list(range(order.k, nvars))
            self._block_layout = [self._grev_or_lex(b1), self._grev_or_lex(b2)]

        # field plan: list of ("comp"|"deg",block)|("cexp",i)|("exp",i)
        plan = []
        if rank:
            plan.append(("comp", None))
        for kind, blk in self._block_layout:
            if kind == "lex":
                plan.extend(("exp", i) for i in blk)
            else:
                plan.append(("deg", blk))
                plan.extend(("cexp", i) for i in reversed(blk))
        self._plan = plan
        self.nfields = len(plan)
        self.key_bits = self.nfields * FIELD_BITS

        # dmask plan: [comp] + exponents in variable order
        self._dnfields = (1 if rank else 0) + nvars
        self.dmask_top = 0
        for f in range(self._dnfields):
            self.dmask_top |= 1 << (FIELD_BITS * f + 15)
        self.key_one = self.key_of((0,) * nvars) if rank == 0 else None
        # ring-part spec for module packs
        self.ring_spec = PackSpec(nvars, order, self.weights) if rank else self

    def _grev_or_lex(self, blk):
        if all(self.weights[i] == 0 for i in blk):
            return ("lex", blk)
        return ("grev", blk)

    # -- packing -------------------------------------------------------
    def key_of(self, exps, comp: int = 0) -> int:
        key = 0
        w = self.weights
        for kind, arg in self._plan:
            if kind == "comp":
                val = self.rank - comp
            elif kind == "deg":
                val = sum(exps[i] * w[i] for i in arg)
            elif kind == "cexp":
                val = EXP_MAX - exps[arg]
            else:
                val = exps[arg]
            if not (0 <= val <= FIELD_MASK):
                raise OverflowError("exponent/degree exceeds packing capacity")
            key = (key << FIELD_BITS) | val
        return key

    def exps_of_key(self, key: int):
        vals = []
        k = key
        for _ in range(self.nfields):
            vals.append(k & FIELD_MASK)
            k >>= FIELD_BITS
        vals.reverse()
        exps = [0] * self.nvars
        comp = 0
        for (kind, arg), val in zip(self._plan, vals):
            if kind == "comp":
                comp = self.rank - val
            elif kind == "cexp":
                exps[arg] = EXP_MAX - val
            elif kind == "exp":
                exps[arg] = val
        return (tuple(exps), comp) if self.rank else tuple(exps)

    def dmask_of(self, exps, comp: int = 0) -> int:
        d = 0
        if self.rank:
            d = comp
        for e in exps:
            if e > EXP_MAX:
                raise OverflowError("exponent exceeds packing capacity")
            d = (d << FIELD_BITS) | e
        return d

    # -- packed arithmetic ---------------------------------------------
    def mul_key(self, a: int, b_ring_increment: int) -> int:
        """Multiply packed monomial a by a ring monomial given as a key
        increment (ring key minus ring key_one, embedded in low fields)."""
        return a + b_ring_increment

    def ring_increment(self, ring_key: int) -> int:
        return ring_key - self.ring_spec.key_one

    @staticmethod
    def divides(dmask_a: int, dmask_b: int, top: int) -> bool:
        """True iff monomial a divides b (per-field a <= b), components
        (if present) sharing the same field test since equality is forced
        by the caller comparing the leading field."""
        return ((dmask_b | top) - dmask_a) & top == top

    def module_divides(self, dmask_a: int, dmask_b: int) -> bool:
        if self.rank:
            shift = FIELD_BITS * self.nvars
            if dmask_a >> shift != dmask_b >> shift:
                return False
        return ((dmask_b | self.dmask_top) - dmask_a) & self.dmask_top == self.dmask_top

    def weighted_degree(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))
