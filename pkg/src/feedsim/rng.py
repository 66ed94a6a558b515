"""Counter-based random streams.

Every draw is a pure function of ``(root seed, purpose, counters...)`` so that
agents own independent streams and the numba kernels can reproduce the exact
same values as the Python code.  Values are finalised with the splitmix64 mixer.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
UNIT = 1.0 / 9007199254740992.0  # 2**-53

PURPOSES = {
    "population": 1,
    "candidates": 2,
    "decide": 3,
    "post": 4,
}


def mix64(z: int) -> int:
    z = (z + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def chain(h: int, *words: int) -> int:
    for w in words:
        h = mix64(h ^ (w & MASK64))
    return h


def to_unit(h: int) -> float:
    return (h >> 11) * UNIT


def key_of(text: str) -> int:
    """Stable 64-bit key for an identifier string."""
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")


@dataclass(frozen=True)
class Stream:
    """A position in the key tree; ``uniform`` draws are addressed, not sequential."""

    key: int

    @classmethod
    def root(cls, seed: int, purpose: str) -> "Stream":
        return cls(chain(0, seed, PURPOSES[purpose]))

    def child(self, *words: int) -> "Stream":
        return Stream(chain(self.key, *words))

    def uniform(self, *words: int) -> float:
        return to_unit(chain(self.key, *words))

    def randint(self, low: int, high: int, *words: int) -> int:
        """Integer in ``[low, high]`` inclusive."""
        return low + int(self.uniform(*words) * (high - low + 1))
