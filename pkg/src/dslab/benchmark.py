"""Lane benchmark: compiled kernel vs pure-Python fallback.

Run with:  python -m dslab.benchmark [N]

Streams N indices of a representative two-law config through both kernels,
reports ns/index and the speedup, and verifies the lanes agree bitwise.
"""

from __future__ import annotations

import sys
import time

from ._kernel import get_kernel_module
from .distributions import ParetoTailSpec, StableParams, law_consts


def _time_lane(mod, law1, law2, g_coeffs, seed: int, n: int):
    kern = mod.StreamKernel(law1, law2, g_coeffs, seed)
    t0 = time.perf_counter()
    abort = kern.advance(n)
    dt = time.perf_counter() - t0
    assert abort == -1
    return dt, kern.s_value()


def main(argv=None) -> int:
    args = argv if argv is not None else sys.argv[1:]
    n = int(args[0]) if args else 200_000
    law1 = law_consts(StableParams(alpha=0.7, scale=1.0))
    law2 = law_consts(ParetoTailSpec(alpha=1.4, c_plus=0.25, c_minus=0.25, cutoff=1.0))
    g_coeffs = (1.0, 0.5, 0.0)  # tau1(n) = floor(sqrt(n))
    seed = 20260810

    from . import _kernel_py
    t_py, s_py = _time_lane(_kernel_py, law1, law2, g_coeffs, seed, n)
    print(f"python lane: {t_py:8.3f} s  ({1e9 * t_py / n:8.1f} ns/index)")

    fast = get_kernel_module()
    if fast.LANE == "python":
        print("compiled lane not built; nothing to compare")
        return 0
    t_cy, s_cy = _time_lane(fast, law1, law2, g_coeffs, seed, n)
    print(f"cython lane: {t_cy:8.3f} s  ({1e9 * t_cy / n:8.1f} ns/index)")
    print(f"speedup:     {t_py / t_cy:8.1f}x")
    match = "bitwise identical" if s_py == s_cy else "MISMATCH"
    print(f"final S parity: {match} (S = {s_cy!r})")
    return 0 if s_py == s_cy else 1


if __name__ == "__main__":
    sys.exit(main())
