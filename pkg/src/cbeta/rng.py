"""Counter-based 64-bit random streams.

Every random quantity in the package is a pure function of a 64-bit seed and
an integer index, so results never depend on evaluation order, batching or
thread count. The building block is the SplitMix64 finalizer ("avalanche").

Seed derivation
---------------
replica ``r`` of a run with master seed ``S``::

    avalanche(S ^ (r * 0xD1B54A32D192ED03))

coefficient ``j`` of a gamma sequence with seed ``s``::

    avalanche(s ^ (j * 0x9E3779B97F4A7C15))

the uniform rotation ``eta`` of a sequence with seed ``s``::

    avalanche(s ^ 0x2545F4914F6CDD1D)

A sub-seed ``t`` is turned into uniforms by the SplitMix64 stream
``u_i = unit(avalanche(t + i * 0x9E3779B97F4A7C15))`` for ``i = 1, 2, ...``,
where ``unit(x) = ((x >> 11) + 1) / 2**53`` lies in ``(0, 1]``.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
REPLICA_MIX = 0xD1B54A32D192ED03
ETA_SALT = 0x2545F4914F6CDD1D

_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_U64 = np.uint64


def avalanche(x: int) -> int:
    """SplitMix64 finalizer on a Python integer (taken modulo 2**64)."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * _M1) & MASK64
    x = ((x ^ (x >> 27)) * _M2) & MASK64
    return x ^ (x >> 31)


def avalanche_array(x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`avalanche` on a ``uint64`` array (returns a new array)."""
    x = np.asarray(x, dtype=np.uint64)
    x = x ^ (x >> _U64(30))
    x *= _U64(_M1)
    x ^= x >> _U64(27)
    x *= _U64(_M2)
    x ^= x >> _U64(31)
    return x


def unit_interval(x: np.ndarray) -> np.ndarray:
    """Map 64-bit words to floats in (0, 1] using the top 53 bits."""
    return ((np.asarray(x, dtype=np.uint64) >> _U64(11)).astype(np.float64) + 1.0) * 2.0**-53


def derive_seed(base_seed: int, label: str) -> int:
    """Stable 64-bit seed for a named sub-experiment of ``base_seed``."""
    digest = hashlib.sha256(f"{int(base_seed)}:{label}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "little")


def replica_seed(master_seed: int, r: int) -> int:
    return avalanche(master_seed ^ ((r * REPLICA_MIX) & MASK64))


def replica_seeds(master_seed: int, count: int, start: int = 0) -> np.ndarray:
    """Seeds of replicas ``start .. start + count - 1`` as a ``uint64`` array."""
    r = np.arange(start, start + count, dtype=np.uint64)
    return avalanche_array(_U64(master_seed & MASK64) ^ (r * _U64(REPLICA_MIX)))


def index_seeds(seeds: np.ndarray, k0: int, k1: int) -> np.ndarray:
    """Per-index sub-seeds, shape ``(k1 - k0, len(seeds))``."""
    j = np.arange(k0, k1, dtype=np.uint64) * _U64(GOLDEN)
    return avalanche_array(j[:, None] ^ np.asarray(seeds, dtype=np.uint64)[None, :])


def stream_uniforms(sub_seeds: np.ndarray, i: int) -> np.ndarray:
    """The ``i``-th uniform (``i >= 1``) of the SplitMix64 stream of each sub-seed."""
    offset = _U64((i * GOLDEN) & MASK64)
    return unit_interval(avalanche_array(np.asarray(sub_seeds, dtype=np.uint64) + offset))


def eta_uniforms(seeds: np.ndarray) -> np.ndarray:
    """Uniform(0, 1] variate attached to each sequence seed (scaled to eta by callers)."""
    sub = avalanche_array(np.asarray(seeds, dtype=np.uint64) ^ _U64(ETA_SALT))
    return stream_uniforms(sub, 1)


class SplitMix64:
    """Sequential view of one counter-based stream.

    ``random()`` returns the next float in (0, 1]. Two generators built from
    the same seed produce the same sequence.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        self._counter = 0

    def next_u64(self) -> int:
        self._counter += 1
        return avalanche(self.seed + self._counter * GOLDEN)

    def random(self) -> float:
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    @property
    def draws(self) -> int:
        """Number of uniforms consumed so far."""
        return self._counter
