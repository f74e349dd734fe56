"""Kernel selection: compiled extension when importable, numpy fallback otherwise."""

from __future__ import annotations

import os

from . import _kernels_py

IMPLEMENTATION = "python"

if os.environ.get("MAGNUS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

reach = _impl.reach
orbit_labels = _impl.orbit_labels
subgroup_lattice = _impl.subgroup_lattice
extend_hom = _impl.extend_hom

__all__ = [
    "IMPLEMENTATION",
    "reach",
    "orbit_labels",
    "subgroup_lattice",
    "extend_hom",
]
