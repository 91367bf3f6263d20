"""Kernel lane selection: compiled extension when built, Python fallback.

Set DSLAB_FORCE_PY=1 to force the pure-Python lane (used by the parity
tests and the lane benchmark).  Both lanes are bit-identical; the choice
only affects speed.
"""

from __future__ import annotations

import os

from . import _kernel_py

try:
    from . import _kernel_cy
except ImportError:  # pragma: no cover - extension not built
    _kernel_cy = None


def get_kernel_module(force_py: bool | None = None):
    if force_py is None:
        force_py = os.environ.get("DSLAB_FORCE_PY", "") not in ("", "0")
    if force_py or _kernel_cy is None:
        return _kernel_py
    return _kernel_cy


def active_lane() -> str:
    return get_kernel_module().LANE
