"""Deterministic random streams shared by every sampling path.

The whole artifact promises bit-reproducible output: the same config must
produce byte-identical CSV files whether the streaming core runs through
the compiled extension or the pure-Python fallback.  numpy's Generator
does not promise cross-version stream stability at the distribution-method
level, so the stream primitives are pinned here explicitly:

  * splitmix64 finalizer for seed derivation (Steele, Lea & Flood 2014),
  * xoshiro256++ for the uniform stream (Blackman & Vigna 2019).

Both are published, widely deployed algorithms over exact 64-bit integer
arithmetic, hence identical in Python and C.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

# Domain-separation constants: the summand stream and the lag stream must
# stay disjoint even when a config reuses one seed value for both.
DOMAIN_SUMMAND = 0x53554D4D414E4453
DOMAIN_LAG = 0x4C41472D53545245

_INV_2_53 = 2.0 ** -53
_INV_2_52 = 2.0 ** -52


def mix64(z: int) -> int:
    """splitmix64 finalizer: a bijective 64-bit avalanche mix."""
    z = (z + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_stream_seed(base_seed: int, rep: int, domain: int) -> int:
    """Per-replication, per-domain stream seed.

    Replication r of domain d gets mix64(mix64(base + (r+1)*GOLDEN) ^ d);
    mix64 is bijective, so distinct (base, rep) pairs cannot collide within
    a domain, and the domain constant separates summand and lag streams.
    """
    h = mix64((base_seed + GOLDEN * (rep + 1)) & MASK64)
    return mix64(h ^ domain)


class XoshiroStream:
    """xoshiro256++ stream with the standard splitmix64 state fill."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        sm = seed & MASK64
        state = []
        for _ in range(4):
            out = mix64(sm)
            sm = (sm + GOLDEN) & MASK64
            state.append(out)
        if not any(state):  # all-zero state is the one forbidden point
            state[0] = GOLDEN
        self.s0, self.s1, self.s2, self.s3 = state

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        tmp = (s0 + s3) & MASK64
        result = (((tmp << 23) | (tmp >> 41)) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def next_double(self) -> float:
        """Uniform on [0, 1): 53 high bits scaled by 2^-53."""
        return (self.next_u64() >> 11) * _INV_2_53

    def next_open_double(self) -> float:
        """Uniform on (0, 1) strictly: ((x >> 12) + 0.5) * 2^-52.

        Strict interiority keeps log(u) and tan(pi*(u - 1/2)) finite, which
        the heavy-tailed transforms rely on.
        """
        return ((self.next_u64() >> 12) + 0.5) * _INV_2_52

    def state(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)
