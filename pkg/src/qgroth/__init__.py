"""Exact symbolic computation in t-deformed Grothendieck rings of quantum loop
algebras (simply-laced), the quantum-group side with dual PBW and dual
canonical bases, the torus isomorphism between them, and brute-force derived
Hall algebras over small finite fields."""

from .cartan import CartanDatum, Weight, cartan_datum
from .characters import (
    CategoryQ,
    NonMultiplicityFree,
    fm_classical,
    fundamental_tchar,
    simple_tchar,
    standard_tchar,
    tensor_simple_check,
    tsystem_exponents,
)
from .laurent import HalfLaurent
from .presentation import Presentation
from .qcartan import QuantumCartan, quantum_cartan
from .qgroup import QGroupSide, n_gamma
from .quiver import AdaptedWord, PhiMap, QuiverContext, QuiverDatum, ringel_form
from .torus import Monomial, TorusElement, XTorus, YTorus, divide_left, divide_right

__version__ = "0.1.0"

__all__ = [
    "AdaptedWord",
    "CartanDatum",
    "CategoryQ",
    "HalfLaurent",
    "Monomial",
    "NonMultiplicityFree",
    "PhiMap",
    "Presentation",
    "QGroupSide",
    "QuantumCartan",
    "QuiverContext",
    "QuiverDatum",
    "TorusElement",
    "Weight",
    "XTorus",
    "YTorus",
    "cartan_datum",
    "divide_left",
    "divide_right",
    "fm_classical",
    "fundamental_tchar",
    "n_gamma",
    "quantum_cartan",
    "ringel_form",
    "simple_tchar",
    "standard_tchar",
    "tensor_simple_check",
    "tsystem_exponents",
]
