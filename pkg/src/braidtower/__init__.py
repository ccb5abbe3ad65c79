"""Braid orbits on Nielsen classes, j-line covers and spin lifting invariants along a 2-Frattini tower over A5."""

from __future__ import annotations

from .grouptower import FiniteGroup, GF2Module, alternating, build_G1, dihedral, group_from_perms, symmetric
from .nielsen import ClassSet, ClassSpec, NielsenClasses, enumerate_inner, enumerate_nielsen, reduced_classes
from .permcore import Perm, PermGroup

__all__ = [
    "ClassSet",
    "ClassSpec",
    "FiniteGroup",
    "GF2Module",
    "NielsenClasses",
    "Perm",
    "PermGroup",
    "alternating",
    "build_G1",
    "dihedral",
    "enumerate_inner",
    "enumerate_nielsen",
    "group_from_perms",
    "reduced_classes",
    "symmetric",
]
__version__ = "0.1.0"
