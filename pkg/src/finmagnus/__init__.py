"""Finite group engine for the Magnus and Strong Magnus properties."""

from __future__ import annotations

from .core import (
    DenseGroup,
    ElementSet,
    Group,
    PermGroup,
    ProductGroup,
    build_direct_product,
    build_from_cayley,
    build_from_permutations,
    conjugacy_classes,
)
from .kernels import IMPLEMENTATION as KERNEL_BACKEND
from .magnus import MagnusReport, magnus_pairwise, magnus_status

__version__ = "0.1.0"

__all__ = [
    "DenseGroup",
    "ElementSet",
    "Group",
    "KERNEL_BACKEND",
    "MagnusReport",
    "PermGroup",
    "ProductGroup",
    "build",
    "build_direct_product",
    "build_from_cayley",
    "build_from_permutations",
    "conjugacy_classes",
    "magnus_pairwise",
    "magnus_status",
]


def build(expr: str) -> Group:
    """Evaluate a group expression such as ``"C7:C3 x M9"``."""
    from .cli.dsl import build as _build

    return _build(expr)
