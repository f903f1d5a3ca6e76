"""Deterministic RNG construction."""

from __future__ import annotations

import hashlib

import numpy as np

# SeedSequence rejects negative entropy; fold user-supplied seeds into range.
_MASK = (1 << 63) - 1


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & _MASK)


def rng_for_word(seed: int, word: str) -> np.random.Generator:
    """Generator keyed by (seed, word), stable across processes.

    Python's builtin hash() is salted per process, so the word is folded in
    through a fixed cryptographic digest instead.
    """
    digest = hashlib.blake2b(word.encode("utf-8"), digest_size=16).digest()
    return np.random.default_rng((seed & _MASK, int.from_bytes(digest, "big")))
