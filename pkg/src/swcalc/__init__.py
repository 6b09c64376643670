"""Exact Seiberg-Witten bookkeeping for rational blowdowns of blown-up projective planes."""
from .lattice import ClassVector, Lattice, standard_lattice
from .ring import SWElement, SWFraction
from .scenario import Options, list_scenarios, run, validate

__all__ = [
    "ClassVector",
    "Lattice",
    "Options",
    "SWElement",
    "SWFraction",
    "list_scenarios",
    "run",
    "standard_lattice",
    "validate",
]
__version__ = "0.1.0"
