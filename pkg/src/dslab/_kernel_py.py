"""Pure-Python streaming kernel: the fallback lane.

Mirrors ``_kernel_cy`` operation for operation.  Both lanes draw from the
same xoshiro256++ stream, evaluate the same law transforms in the same
expression order, and accumulate with the same Neumaier compensated sums,
so their outputs are bit-identical (the extension is compiled with FP
contraction disabled for exactly this reason).  Keep the two files in
sync; the parity test suite pins the equivalence.
"""

from __future__ import annotations

import math
from array import array

from .rng import GOLDEN, MASK64, mix64

LANE = "python"

_INV_2_53 = 2.0 ** -53
_INV_2_52 = 2.0 ** -52


class StreamKernel:
    """Single-replication stream state: rng, law params, scheme counters,
    compensated component sums U (G1 draws) and V (G2 draws).

    S_n is defined as value(U) + value(V), never accumulated separately,
    which makes the component identity U + V = S exact by construction.
    """

    __slots__ = (
        "law1", "law2", "g_c", "g_p", "g_m",
        "s0", "s1", "s2", "s3",
        "us", "uc", "vs", "vc",
        "k", "prev_t1",
    )

    def __init__(self, law1: tuple, law2: tuple, g_coeffs: tuple, seed: int):
        self.law1 = law1
        self.law2 = law2
        self.g_c, self.g_p, self.g_m = g_coeffs
        sm = seed & MASK64
        state = []
        for _ in range(4):
            state.append(mix64(sm))
            sm = (sm + GOLDEN) & MASK64
        if not any(state):
            state[0] = GOLDEN
        self.s0, self.s1, self.s2, self.s3 = state
        self.us = self.uc = 0.0
        self.vs = self.vc = 0.0
        self.k = 0
        self.prev_t1 = 0

    # -- rng ---------------------------------------------------------------

    def _next_u64(self) -> int:
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

    # -- law draws ---------------------------------------------------------

    def _draw(self, law: tuple) -> float:
        kind = law[0]
        if kind == 0:
            return 0.0
        if kind == 1:
            _, alpha, one_minus_alpha, inv_alpha, cms_exp, scale_mult, _ = law
            u = math.pi * ((((self._next_u64() >> 12) + 0.5) * _INV_2_52) - 0.5)
            w = -math.log(((self._next_u64() >> 12) + 0.5) * _INV_2_52)
            if alpha == 1.0:
                x = math.tan(u)
            else:
                t1 = math.sin(alpha * u) / math.pow(math.cos(u), inv_alpha)
                t2 = math.cos(one_minus_alpha * u) / w
                x = t1 * math.pow(t2, cms_exp)
            return scale_mult * x
        _, inv_alpha, p_body, p_plus_hi, c_plus, c_minus, cutoff = law
        u = (self._next_u64() >> 11) * _INV_2_53
        if u < p_body:
            return cutoff * (2.0 * (u / p_body) - 1.0)
        if u < p_plus_hi:
            w = p_plus_hi - u
            return math.pow(c_plus / w, inv_alpha)
        w = 1.0 - u
        return -math.pow(c_minus / w, inv_alpha)

    # -- main loop ---------------------------------------------------------

    def advance(self, k_to: int) -> int:
        """Process indices current+1 .. k_to.  Returns -1, or the first
        index at which an accumulator went non-finite."""
        g_c, g_p, g_m = self.g_c, self.g_p, self.g_m
        law1, law2 = self.law1, self.law2
        us, uc, vs, vc = self.us, self.uc, self.vs, self.vc
        prev_t1 = self.prev_t1
        k = self.k
        abort = -1
        while k < k_to:
            k += 1
            kf = float(k)
            g = g_c * math.pow(kf, g_p)
            if g_m != 0.0:
                g = g * math.pow(math.log(kf + math.e), -g_m)
            t1 = int(math.floor(g))
            if t1 > k:
                t1 = k
            if t1 > prev_t1:
                prev_t1 = t1
                x = self._draw(law1)
                t = us + x
                if abs(us) >= abs(x):
                    uc += (us - t) + x
                else:
                    uc += (x - t) + us
                us = t
                if not math.isfinite(us):
                    abort = k
                    break
            else:
                x = self._draw(law2)
                t = vs + x
                if abs(vs) >= abs(x):
                    vc += (vs - t) + x
                else:
                    vc += (x - t) + vs
                vs = t
                if not math.isfinite(vs):
                    abort = k
                    break
        self.us, self.uc, self.vs, self.vc = us, uc, vs, vc
        self.prev_t1 = prev_t1
        self.k = k
        return abort

    # -- views -------------------------------------------------------------

    @property
    def index(self) -> int:
        return self.k

    @property
    def tau1(self) -> int:
        return self.prev_t1

    def u_value(self) -> float:
        return self.us + self.uc

    def v_value(self) -> float:
        return self.vs + self.vc

    def s_value(self) -> float:
        return (self.us + self.uc) + (self.vs + self.vc)


def sample_law_many(law: tuple, seed: int, n: int) -> array:
    """n straight draws from one law (validation helper)."""
    kern = StreamKernel(law, law, (1.0, 1.0, 0.0), seed)
    out = array("d", bytes(8 * n))
    for i in range(n):
        out[i] = kern._draw(law)
    return out
