"""Synthetic framework generators for tests, benchmarks, and training data."""

from __future__ import annotations

import numpy as np

from .framework import ArgumentationFramework

__all__ = ["random_framework", "chain_framework"]


def random_framework(n: int, attack_prob: float = 0.25, seed: int = 0,
                     allow_self_attacks: bool = True) -> ArgumentationFramework:
    """Sample an AF with each ordered pair attacking independently.

    Self-attacks are sampled with the same probability unless disabled.
    The same (n, attack_prob, seed) always yields the same framework.
    """
    if n < 1:
        raise ValueError(f"need at least one argument, got n={n}")
    if not 0.0 <= attack_prob <= 1.0:
        raise ValueError(f"attack_prob must be in [0, 1], got {attack_prob}")
    rng = np.random.default_rng(seed)
    hit = rng.random((n, n)) < attack_prob
    if not allow_self_attacks:
        np.fill_diagonal(hit, False)
    src, tgt = np.nonzero(hit)
    attacks = [(int(a) + 1, int(b) + 1) for a, b in zip(src, tgt)]
    return ArgumentationFramework(n, attacks)


def chain_framework(n: int) -> ArgumentationFramework:
    """Directed attack chain 1 -> 2 -> ... -> n.

    Grounded labelling must propagate through the whole chain one argument
    at a time, which makes this the worst case for the worklist and a good
    probe for linear time and memory behaviour at large n.
    """
    if n < 1:
        raise ValueError(f"need at least one argument, got n={n}")
    return ArgumentationFramework(n, [(i, i + 1) for i in range(1, n)])
