"""Deterministic derivative-free maximization used by the ensemble searches.

The random stream is an xorshift64* generator specified by its recurrence
(x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output x * 0x2545F4914F6CDD1D,
all mod 2^64), so identical seeds reproduce identical searches on any
platform.  Local refinement is a greedy coordinate pattern search with a
shrinking step and a hard evaluation budget.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D
_SEED_MIX = 0x9E3779B97F4A7C15


class XorShift64Star:
    """xorshift64* pseudo-random generator with a 64-bit state."""

    def __init__(self, seed: int):
        state = (int(seed) ^ _SEED_MIX) & _MASK
        self.state = state if state else _SEED_MIX

    def next_u64(self) -> int:
        x = self.state
        x ^= (x >> 12)
        x ^= (x << 25) & _MASK
        x ^= (x >> 27)
        self.state = x
        return (x * _MULT) & _MASK

    def uniform(self) -> float:
        """Uniform double in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniforms(self, n: int) -> np.ndarray:
        return np.array([self.uniform() for _ in range(n)], dtype=float)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        span = hi - lo + 1
        return lo + int(self.next_u64() % span)


def derive_seeds(seed: int, n: int) -> list[int]:
    """Per-restart seeds: the first n outputs of the master stream.

    Taking a prefix of the same stream guarantees that increasing the
    restart count never changes the work done by earlier restarts.
    """
    master = XorShift64Star(seed)
    return [master.next_u64() for _ in range(n)]


def coordinate_ascent(fn, theta, value, *, coords=None, step=0.3, budget=400,
                      shrink=0.5, step_min=1e-7):
    """Greedy coordinate-wise pattern search (maximization).

    Probes theta[i] +- step for each coordinate in round-robin order,
    accepting improvements immediately and riding an improving direction
    while it keeps paying off.  The step halves after a full cycle with
    no improvement.  Stops when the evaluation budget is exhausted or
    the step underflows.  Returns (value, theta, evals_used).
    """
    theta = np.array(theta, dtype=float)
    order = list(range(len(theta))) if coords is None else list(coords)
    if not order:
        return value, theta, 0
    used = 0
    cursor = 0
    stale = 0
    while used < budget and step > step_min:
        i = order[cursor % len(order)]
        improved = False
        for delta in (step, -step):
            cand = theta.copy()
            cand[i] += delta
            v = fn(cand)
            used += 1
            if v > value:
                theta, value = cand, v
                improved = True
                while used < budget:
                    cand = theta.copy()
                    cand[i] += delta
                    v = fn(cand)
                    used += 1
                    if v > value:
                        theta, value = cand, v
                    else:
                        break
                break
            if used >= budget:
                break
        stale = 0 if improved else stale + 1
        if stale >= len(order):
            step *= shrink
            stale = 0
        cursor += 1
    return value, theta, used
