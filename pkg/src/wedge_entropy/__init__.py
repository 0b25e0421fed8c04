"""Vacuum relative entropy of coherent states of a free scalar field on a Rindler wedge."""

from .charges import GaussianTerm, TimeZeroCharge, TruncationMode, to_onshell
from .engine import (
    EntropyReport,
    Route,
    boundary_decomposition,
    cross_term,
    entropy_closed_form,
    momentum_entropy,
    relative_entropy_between,
)
from .faddeeva import faddeeva
from .momentum import MomentumGrid, OnShellData

__all__ = [
    "EntropyReport",
    "GaussianTerm",
    "MomentumGrid",
    "OnShellData",
    "Route",
    "TimeZeroCharge",
    "TruncationMode",
    "boundary_decomposition",
    "cross_term",
    "entropy_closed_form",
    "faddeeva",
    "momentum_entropy",
    "relative_entropy_between",
    "to_onshell",
]

__version__ = "0.1.0"
