"""Deterministic random streams for reproducible experiments.

The generator is a counter with a Weyl increment pushed through a 64-bit
avalanche mix (splitmix-style).  Output depends only on the 64-bit state,
never on platform word size or library version, so a fixed seed produces
the same draw sequence everywhere.  Streams for independent trials are
derived by mixing (master seed, scenario tag, trial index), which makes
results independent of trial execution order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_WEYL = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# salts for stream derivation (fractional parts of sqrt(2), sqrt(3), sqrt(5))
_SALT_SEED = 0x6A09E667F3BCC909
_SALT_TAG = 0xBB67AE8584CAA73B
_SALT_TRIAL = 0x3C6EF372FE94F82B

_U = np.uint64


def _mix64(z: int) -> int:
    """Avalanche finalizer on a 64-bit word (scalar, exact integer ops)."""
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def _mix64_block(z: np.ndarray) -> np.ndarray:
    """Vectorized avalanche finalizer; uint64 arithmetic wraps mod 2^64."""
    z = (z ^ (z >> _U(30))) * _U(_MIX1)
    z = (z ^ (z >> _U(27))) * _U(_MIX2)
    return z ^ (z >> _U(31))


class RngStream:
    """Single-owner deterministic stream of 64-bit words.

    The k-th output is mix64(state0 + k * WEYL), so block and scalar draws
    produce the same sequence and blocks can be generated vectorized.
    """

    __slots__ = ("_state",)

    def __init__(self, state: int):
        self._state = state & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _WEYL) & _MASK64
        return _mix64(self._state)

    def u64_block(self, n: int) -> np.ndarray:
        """Next n words as a uint64 array."""
        ks = _U(self._state) + _U(_WEYL) * np.arange(1, n + 1, dtype=np.uint64)
        self._state = (self._state + n * _WEYL) & _MASK64
        return _mix64_block(ks)

    def uniform_block(self, n: int) -> np.ndarray:
        """n uniforms in (0, 1]; 53-bit mantissas, never exactly zero."""
        w = self.u64_block(n)
        return ((w >> _U(11)) + _U(1)) * 2.0**-53

    def normal_block(self, n: int) -> np.ndarray:
        """n standard normals via the Box-Muller transform.

        Pairs are generated from consecutive uniform pairs; the transform is
        pinned (no ziggurat) so the value sequence is a pure function of the
        word stream.
        """
        half = (n + 1) // 2
        u = self.uniform_block(2 * half)
        radius = np.sqrt(-2.0 * np.log(u[:half]))
        theta = (2.0 * np.pi) * u[half:]
        out = np.empty(2 * half)
        out[0::2] = radius * np.cos(theta)
        out[1::2] = radius * np.sin(theta)
        return out[:n]

    def below(self, bound: int) -> int:
        """Unbiased integer in [0, bound) via threshold rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) % bound
        while True:
            w = self.next_u64()
            if w >= limit:
                return w % bound


def derive_stream(master_seed: int, scenario_tag: int, trial_index: int) -> RngStream:
    """Stream for one (scenario, trial) cell of an experiment.

    The three inputs are folded through the avalanche mix with distinct
    salts, so streams for distinct (tag, trial) pairs are decorrelated and
    trials can run in any order (or in parallel) without changing results.
    """
    h = _mix64((master_seed & _MASK64) ^ _SALT_SEED)
    h = _mix64(h ^ ((scenario_tag + _SALT_TAG) & _MASK64))
    h = _mix64(h ^ ((trial_index + _SALT_TRIAL) & _MASK64))
    return RngStream(h)
