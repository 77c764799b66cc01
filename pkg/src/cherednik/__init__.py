"""Combinatorics and K-theory of category O for cyclotomic rational Cherednik algebras."""
from __future__ import annotations

from .combinatorics import Box, Multipartition, Partition, ResourceCapError, enumerate_multipartitions
from .params import ParamKS, PreconditionError
from .scalars import Scalar, parse_scalar

__all__ = [
    "Box",
    "Multipartition",
    "Partition",
    "ParamKS",
    "PreconditionError",
    "ResourceCapError",
    "Scalar",
    "enumerate_multipartitions",
    "parse_scalar",
]

__version__ = "0.1.0"
