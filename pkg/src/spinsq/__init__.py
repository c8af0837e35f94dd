"""Spin squeezing parameters and pairwise concurrence for symmetric qubit ensembles."""

from spinsq.analysis import StateReport, evaluate
from spinsq.dicke import CollectiveMoments, SymmetricState, load_state_file, moments
from spinsq.errors import (
    NumericalError,
    ParameterError,
    PreconditionError,
    ResourceLimitError,
    SpinsqError,
    VerificationError,
)
from spinsq.families import FamilySpec, build
from spinsq.pairwise import concurrence_general, concurrence_x, reduced_density, xstate_params
from spinsq.squeezing import SqueezingReport, varsigma, xi_s_general, xi_s_parity, xi_t

__version__ = "0.1.0"

__all__ = [
    "CollectiveMoments",
    "FamilySpec",
    "NumericalError",
    "ParameterError",
    "PreconditionError",
    "ResourceLimitError",
    "SpinsqError",
    "SqueezingReport",
    "StateReport",
    "SymmetricState",
    "VerificationError",
    "build",
    "concurrence_general",
    "concurrence_x",
    "evaluate",
    "load_state_file",
    "moments",
    "reduced_density",
    "varsigma",
    "xi_s_general",
    "xi_s_parity",
    "xi_t",
    "xstate_params",
]
