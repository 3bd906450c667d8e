"""Deterministic 64-bit random number generation.

Everything random in the engine flows through SplitMix64 so that identical
seeds produce identical worlds on any platform or language.  The algorithm is
Steele, Lea and Flood's SplitMix64: state advances by the golden-gamma
constant and each output is finalized with two xor-shift multiplies.

Derived streams (world layout, entity draws, question sampling, evaluation
suites) are obtained by hashing a parent seed with a text label:

    child_seed = mix64(parent_seed XOR fnv1a64(label))

where mix64 is the SplitMix64 finalizer.  Both functions are fixed here and
documented so external implementations can reproduce every draw.
"""

from __future__ import annotations

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def mix64(x: int) -> int:
    """SplitMix64 finalizer: bijective avalanche over 64-bit ints."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return (x ^ (x >> 31)) & MASK64


def fnv1a64(text: str) -> int:
    """FNV-1a hash of the UTF-8 bytes of text."""
    h = FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * FNV_PRIME) & MASK64
    return h


def derive_seed(parent: int, label: str, index: int = 0) -> int:
    """Derive a child seed from a parent seed, a label, and an index.

    The index folds in after the label hash so derive_seed(s, "game", 0)
    and derive_seed(s, "game", 1) are unrelated streams.
    """
    h = mix64((parent & MASK64) ^ fnv1a64(label))
    return mix64((h + index * GOLDEN_GAMMA) & MASK64)


class SplitMix64:
    """Sequential SplitMix64 generator with convenience draws."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def randrange(self, n: int) -> int:
        """Uniform int in [0, n). n must be positive."""
        if n <= 0:
            raise ValueError(f"randrange needs n >= 1, got {n}")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform int in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.randrange(hi - lo + 1)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def chance(self, p: float) -> bool:
        return self.random() < p

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, seq: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def sample(self, seq, k: int) -> list:
        """k distinct elements, order randomized."""
        if k > len(seq):
            raise ValueError(f"sample size {k} exceeds population {len(seq)}")
        pool = list(seq)
        self.shuffle(pool)
        return pool[:k]

    def split(self, label: str, index: int = 0) -> "SplitMix64":
        """Independent child generator keyed by label and index."""
        return SplitMix64(derive_seed(self.state, label, index))
