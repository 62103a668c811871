"""Seedable PRNG used by every stochastic component.

The generator is xoshiro256** (Blackman & Vigna), seeded through a
splitmix64 stream.  Both algorithms are fixed by name and constants so
that any implementation language reproduces the exact same draws:

* splitmix64: state += 0x9E3779B97F4A7C15; z = state;
  z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
  output z ^ z>>31.
* xoshiro256**: output = rotl64(s1 * 5, 7) * 9; then
  t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t;
  s3 = rotl64(s3, 45).
* A uniform double in [0, 1) is (output >> 11) * 2**-53.

Sub-seeds for independent components are consecutive splitmix64 outputs
of the master seed (see :func:`split_seed`).
"""

from __future__ import annotations

import math

import numpy as np

from ._kernels import rng_fill

_MASK64 = (1 << 64) - 1

# Draw counts below this threshold skip the batch kernel call.
_BATCH_THRESHOLD = 8


def _splitmix64_next(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return state, z


def split_seed(seed: int, n: int) -> list[int]:
    """Derive ``n`` independent child seeds from a master seed.

    Child ``k`` is the ``k+1``-th output of a splitmix64 stream whose
    state starts at ``seed``.  This is the documented seed-splitting rule
    used by the experiment harness.
    """
    state = seed & _MASK64
    out = []
    for _ in range(n):
        state, z = _splitmix64_next(state)
        out.append(z)
    return out


class Xoshiro256:
    """xoshiro256** stream with numpy-friendly draw helpers."""

    def __init__(self, seed: int):
        self.seed = seed
        state = seed & _MASK64
        s = []
        for _ in range(4):
            state, z = _splitmix64_next(state)
            s.append(z)
        if not any(s):  # cannot happen for splitmix64 output, kept as a guard
            s[0] = 1
        self._s = s

    def next_raw(self) -> int:
        """Next raw 64-bit output."""
        s0, s1, s2, s3 = self._s
        result = (self._rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = self._rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    @staticmethod
    def _rotl(x: int, k: int) -> int:
        return ((x << k) | (x >> (64 - k))) & _MASK64

    # -- draws ---------------------------------------------------------

    def random(self, size=None):
        """Uniform double(s) in [0, 1)."""
        if size is None:
            return (self.next_raw() >> 11) * 2.0**-53
        n = int(np.prod(size)) if not np.isscalar(size) else int(size)
        out = np.empty(n, dtype=np.float64)
        if n >= _BATCH_THRESHOLD:
            state = np.array(self._s, dtype=np.uint64)
            rng_fill(state, out)
            self._s = [int(x) for x in state]
        else:
            for i in range(n):
                out[i] = (self.next_raw() >> 11) * 2.0**-53
        return out.reshape(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return low + (high - low) * self.random(size)

    def normal(self, size=None):
        """Standard normals via Box-Muller on consecutive uniform pairs."""
        if size is None:
            return float(self.normal(1)[0])
        n = int(np.prod(size)) if not np.isscalar(size) else int(size)
        m = (n + 1) // 2
        u1 = self.random(m)
        u2 = self.random(m)
        u1 = np.where(u1 == 0.0, 2.0**-53, u1)
        r = np.sqrt(-2.0 * np.log(u1))
        z = np.concatenate([r * np.cos(2.0 * math.pi * u2),
                            r * np.sin(2.0 * math.pi * u2)])[:n]
        return z.reshape(size)

    def integer(self, n: int) -> int:
        """Uniform integer in [0, n).  Floor sampling; fine for small n."""
        return min(int(self.random() * n), n - 1)

    def spawn(self, index: int) -> "Xoshiro256":
        """Child stream derived from this stream's seed and an index."""
        return Xoshiro256(split_seed(self.seed, index + 1)[index])
