"""Platform-stable random systems.

Generator: xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D),
seeded by one round of splitmix64 (increment 0x9E3779B97F4A7C15, multipliers
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB) so that small consecutive seeds give
unrelated streams. Floats use the top 53 bits.

Draw order for :func:`random_system`:

1. ``M`` weights ``u_m`` in ``(0, 1]``;
2. total mass ``T = 0.5 + 0.5 * u`` with ``u`` in ``[0, 1)``; ``p_m = T * u_m / sum(u)``;
3. memberships row by row, one top bit per (outcome, event); the whole matrix
   is redrawn until every event contains at least one outcome.
"""

from __future__ import annotations

import numpy as np

from .system import FiniteProbabilitySystem

_MASK = (1 << 64) - 1
_XS_MULT = 0x2545F4914F6CDD1D
_SM_INC = 0x9E3779B97F4A7C15
_SM_M1 = 0xBF58476D1CE4E5B9
_SM_M2 = 0x94D049BB133111EB


def _splitmix64(x):
    z = (x + _SM_INC) & _MASK
    z = ((z ^ (z >> 30)) * _SM_M1) & _MASK
    z = ((z ^ (z >> 27)) * _SM_M2) & _MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed):
        if seed < 0:
            raise ValueError("seed must be nonnegative")
        self.state = _splitmix64(seed & _MASK) or _SM_INC

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * _XS_MULT) & _MASK

    def random(self):
        """Uniform in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def random_open0(self):
        """Uniform in (0, 1]."""
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def coin(self):
        return bool(self.next_u64() >> 63)


def random_system(seed, n_events, n_outcomes):
    if n_events < 1 or n_outcomes < 1:
        raise ValueError("events and outcomes must both be at least 1")
    rng = XorShift64Star(seed)
    weights = [rng.random_open0() for _ in range(n_outcomes)]
    total = 0.5 + 0.5 * rng.random()
    norm = sum(weights)
    probs = np.array([total * w / norm for w in weights])
    while True:
        membership = np.array(
            [[rng.coin() for _ in range(n_events)] for _ in range(n_outcomes)], dtype=bool
        )
        if membership.any(axis=0).all():
            break
    return FiniteProbabilitySystem(probs, membership, n_events)


def seeded_shape(seed, max_events=5, max_outcomes=12):
    """Deterministic ``(n_events, n_outcomes)`` used by the bulk property suites."""
    return 1 + seed % max_events, 1 + (seed // max_events) % max_outcomes
