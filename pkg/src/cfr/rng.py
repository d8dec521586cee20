"""Deterministic randomness: one master seed, labeled sub-streams.

Sub-seeds are derived by hashing the label so inserting a new pipeline
stage does not perturb the draws of existing stages."""

from __future__ import annotations

import hashlib
import random


def sub_seed(seed: int, label: str) -> int:
    h = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def stream(seed: int, label: str) -> random.Random:
    return random.Random(sub_seed(seed, label))


def random_point(field, rng: random.Random, n: int, window: int = 100):
    """A projective point as a raw coefficient vector, not all zero."""
    while True:
        v = [field.random(rng, window) for _ in range(n)]
        if any(not field.is_zero(c) for c in v):
            return v
