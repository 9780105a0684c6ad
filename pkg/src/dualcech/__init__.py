"""Exact Cech cohomology of presheaves on dual complexes of normal crossings configurations."""

from . import bicomplex, errors, exactla, localmodel, presheaf, simplicial, snc, toric

__all__ = [
    "bicomplex",
    "errors",
    "exactla",
    "localmodel",
    "presheaf",
    "simplicial",
    "snc",
    "toric",
]

__version__ = "0.1.0"
