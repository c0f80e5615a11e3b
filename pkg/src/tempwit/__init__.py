"""Thermal-qubit temporal-entanglement witnesses: Lindblad dynamics, pseudo-density
matrices, temporal CHSH and the complex heat capacity."""

from .model import (
    DEFAULTS,
    AccuracyError,
    BlochState,
    ContractViolation,
    DegenerateNormalization,
    ModelParams,
    ParameterError,
    derived_rates,
    pauli_expectation,
)

__version__ = "0.1.0"
