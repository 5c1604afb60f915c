"""Deterministic seed derivation for reproducible parallel simulation.

Every random stream in the package is derived from explicit integer keys
through numpy's SeedSequence, so results never depend on call order or on
how work is split across processes.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["derive_seed", "stable_key"]


def derive_seed(*keys: int) -> int:
    """Mix integer keys into a single 64-bit seed."""
    state = np.random.SeedSequence(list(keys)).generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])


def stable_key(text: str) -> int:
    """64-bit key from a canonical string, stable across runs and platforms."""
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
