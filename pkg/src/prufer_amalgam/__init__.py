"""Exhaustive checks of Prüfer, Gaussian and arithmetical properties of
amalgamated algebras along an ideal, over finite rings and Z localized at a
prime."""

from .amalgam import AmalgamRing, make_amalgamation, make_duplication
from .classify import ClassifiedRing, classify
from .gaussian import check_hierarchy, is_arithmetical, is_gaussian, is_pruefer_finite
from .ideals import Ideal, IdealLattice, all_ideals, ideal_closure, principal
from .rings import (
    FiniteRing,
    RingHom,
    canonical_hom,
    identity_hom,
    make_hom,
    make_product,
    make_quotient,
    make_trivial_extension,
    make_zmod,
)
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "AmalgamRing",
    "ClassifiedRing",
    "FiniteRing",
    "Ideal",
    "IdealLattice",
    "RingHom",
    "Verdict",
    "__version__",
    "all_ideals",
    "canonical_hom",
    "check_hierarchy",
    "classify",
    "ideal_closure",
    "identity_hom",
    "is_arithmetical",
    "is_gaussian",
    "is_pruefer_finite",
    "make_amalgamation",
    "make_duplication",
    "make_hom",
    "make_product",
    "make_quotient",
    "make_trivial_extension",
    "make_zmod",
    "principal",
]
