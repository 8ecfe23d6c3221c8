"""Nichols algebras of diagonal type: roots, PBW bases and defining relations."""

from .cartanweyl import (
    Bicharacter,
    CartanData,
    CartanError,
    RootSystem,
    RootSystemError,
    cartan_matrix,
    cartan_orbit,
    reflect,
    root_system,
)
from .cyclotomic import CycNum, RootOfUnity
from .braided import TensorElem, braided_bracket, coproduct, hyperletter, pairing, pairing_coproduct
from .quotient import CapExceeded, Nichols, hilbert_series, in_radical
from .relations import Relation, check_soundness, emit_relations, general_relations

__version__ = "0.1.0"

__all__ = [
    "Bicharacter",
    "CapExceeded",
    "CartanData",
    "CartanError",
    "CycNum",
    "Nichols",
    "Relation",
    "RootOfUnity",
    "RootSystem",
    "RootSystemError",
    "TensorElem",
    "braided_bracket",
    "cartan_matrix",
    "cartan_orbit",
    "check_soundness",
    "coproduct",
    "emit_relations",
    "general_relations",
    "hilbert_series",
    "hyperletter",
    "in_radical",
    "pairing",
    "pairing_coproduct",
    "reflect",
    "root_system",
]
