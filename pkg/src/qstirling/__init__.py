"""Thermodynamics of conventional and regenerative quantum Stirling cycles."""
from .cycle import (
    CostKind,
    CostModel,
    CycleParams,
    CyclePoints,
    CycleReport,
    Mode,
    analyze,
    build_points,
)
from .errors import DivergenceError, InvalidInputError
from .media import COUPLED_SPINS, SINGLE_SPIN, MediumParams, Spectrum, WorkingMedium, spectrum
from .thermal import ThermalState

__version__ = "0.1.0"
