"""Hilbert series of monomial ideals: projective dimension, degree, and
Hilbert function values, from a Groebner basis' lead exponents.

The numerator N(t) with HS(R/I) = N(t)/(1-t)^n is computed by the
standard pivot recursion with memoization.  All variables must have
weight 1 (the public rings always do)."""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial


def _minimalize(gens):
    """Minimal generators of a monomial ideal given as exponent tuples."""
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(m, g)) for m in out):
            out.append(g)
    return out


def _poly_mul(a, b):
    out = {}
    for da, ca in a.items():
        for db, cb in b.items():
            out[da + db] = out.get(da + db, 0) + ca * cb
    return out


def _poly_add(a, b):
    out = dict(a)
    for d, c in b.items():
        out[d] = out.get(d, 0) + c
    return {d: c for d, c in out.items() if c}


def _numerator(gens_frozen):
    """Hilbert numerator of the monomial ideal; dict degree -> coeff."""
    return dict(_numerator_cached(gens_frozen))


@lru_cache(maxsize=200000)
def _numerator_cached(gens_frozen):
    gens = list(gens_frozen)
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):  # contains 1
        return ()
    # pure-power base case: pairwise disjoint supports, each a single variable
    supports = [tuple(i for i, e in enumerate(g) if e) for g in gens]
    if all(len(s) == 1 for s in supports) and len({s[0] for s in supports}) == len(gens):
        acc = {0: 1}
        for g in gens:
            acc = _poly_mul(acc, {0: 1, sum(g): -1})
        return tuple(sorted(acc.items()))
    # pivot: most frequent variable among those occurring in a mixed
    # (support >= 2) generator, so that I + (x_piv) is strictly simpler
    counts = {}
    mixed = set()
    for s in supports:
        for i in s:
            counts[i] = counts.get(i, 0) + 1
        if len(s) >= 2:
            mixed.update(s)
    piv = max(mixed, key=lambda i: (counts[i], -i))
    n = len(gens[0])
    pv = tuple(1 if i == piv else 0 for i in range(n))
    # I + (x_piv)
    plus = _minimalize([g for g in gens if g[piv] == 0] + [pv])
    # I : x_piv
    quot = _minimalize([tuple(e - 1 if i == piv else e for i, e in enumerate(g))
                        if g[piv] else g for g in gens])
    n_plus = _numerator(tuple(plus))
    n_quot = _numerator(tuple(quot))
    shifted = {d + 1: c for d, c in n_quot.items()}
    return tuple(sorted(_poly_add(n_plus, shifted).items()))


def hilbert_numerator(lead_exps):
    gens = _minimalize([tuple(e) for e in lead_exps])
    return _numerator(tuple(gens))


def dim_degree_from_leads(lead_exps, nvars: int):
    """(projective dimension, degree) of Proj(R/I) from GB lead exponents.

    Empty scheme: (-1, 0).  The full ring (no generators) of P^{n-1}
    gives (n-1, 1)."""
    num = hilbert_numerator(lead_exps)
    if not num:
        return (-1, 0)
    # divide out (1 - t) while possible
    coeffs = [0] * (max(num) + 1)
    for d, c in num.items():
        coeffs[d] = c
    cancels = 0
    while sum(coeffs) == 0:
        # synthetic division by (1 - t): q_i = sum_{j<=i} c_j
        acc = 0
        q = []
        for c in coeffs[:-1]:
            acc += c
            q.append(acc)
        coeffs = q if q else [0]
        cancels += 1
        if not any(coeffs):
            return (-1, 0)
    krull = nvars - cancels
    if krull <= 0:
        return (-1, 0)
    return (krull - 1, sum(coeffs))


def hilbert_polynomial_from_leads(lead_exps, nvars: int):
    """Coefficients [c_0, c_1, ...] of the Hilbert polynomial of R/I,
    as exact Fractions, low degree first (trailing zeros trimmed)."""
    from fractions import Fraction

    num = hilbert_numerator(lead_exps)
    n1 = nvars - 1
    coeffs = [Fraction(0)] * (n1 + 1)
    for j, c in num.items():
        # C(n1 + t - j, n1) = prod_{i=1..n1} (t - j + i) / n1!
        poly = [Fraction(1)]
        for i in range(1, n1 + 1):
            poly = [Fraction(0)] + poly
            for k in range(len(poly) - 1):
                poly[k] += poly[k + 1] * (i - j)
        f = Fraction(factorial(n1))
        for k, a in enumerate(poly):
            coeffs[k] += c * a / f
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def hilbert_function_from_leads(lead_exps, nvars: int, d: int) -> int:
    """dim_K (R/I)_d: standard monomials of degree d."""
    if d < 0:
        return 0
    num = hilbert_numerator(lead_exps)
    total = 0
    for j, c in num.items():
        if j <= d:
            total += c * comb(nvars - 1 + d - j, nvars - 1)
    return total
