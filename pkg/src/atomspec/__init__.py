"""Atom spectra of module categories over bound quiver algebras and triangular matrix rings."""

from .algebra import AlgebraElement, Relation, is_admissible, parse_element, path_element, resolve_relation
from .dsl import parse_quiver
from .errors import (
    AtomSpecError,
    CapabilityError,
    CompositionError,
    NonAdmissibleRelationError,
    ParseError,
    ResourceError,
    UsageError,
)
from .ideals import IdealHandle, Membership, Verdict, arrow_power_contained, ideal_membership, is_right_rooted
from .oracle import FiniteRep, SubRep, verify_theorem_A
from .quiver import Path, Quiver, enumerate_paths, is_acyclic
from .rings import BaseRing, PrimePoint, SpecSubset, SpectrumModel, spectrum_of
from .spectrum import (
    AtomPoint,
    AtomSpectrum,
    ComonoformIdeal,
    Status,
    atom_spectrum,
    comonoform_ideal,
    emit,
    is_open_atoms,
    order_pairs,
    special_presentations,
    verify_ideal_generators,
)
from .triangular import Bimodule, CommaObject, TriangularRing, triangular_spectrum

__all__ = [
    "AlgebraElement", "AtomPoint", "AtomSpecError", "AtomSpectrum", "BaseRing", "Bimodule", "CapabilityError",
    "CommaObject", "ComonoformIdeal", "CompositionError", "FiniteRep", "IdealHandle", "Membership",
    "NonAdmissibleRelationError", "ParseError", "Path", "PrimePoint", "Quiver", "Relation", "ResourceError",
    "SpecSubset", "SpectrumModel", "Status", "SubRep", "TriangularRing", "UsageError", "Verdict",
    "arrow_power_contained", "atom_spectrum", "comonoform_ideal", "emit", "enumerate_paths", "ideal_membership",
    "is_acyclic", "is_admissible", "is_open_atoms", "is_right_rooted", "order_pairs", "parse_element",
    "parse_quiver", "path_element", "resolve_relation", "special_presentations", "spectrum_of",
    "triangular_spectrum", "verify_ideal_generators", "verify_theorem_A",
]
