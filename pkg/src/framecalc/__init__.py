"""Finite frames, their congruence frames, biframes and spectra."""

from .assembly import Assembly, assemble, tower
from .biframe import Biframe
from .catalog import named
from .congruence import Congruence, congruence_from_pairs, delta, nabla
from .errors import (
    FrameCalcError,
    InvariantViolation,
    ParseError,
    SizeBudgetExceeded,
    ValidationError,
)
from .order import Frame, FrameHom, frame_from_covers, frame_from_poset
from .spatial import FiniteSpace, sigma, skula_biframe

__version__ = "0.1.0"

__all__ = [
    "Assembly",
    "Biframe",
    "Congruence",
    "FiniteSpace",
    "Frame",
    "FrameCalcError",
    "FrameHom",
    "InvariantViolation",
    "ParseError",
    "SizeBudgetExceeded",
    "ValidationError",
    "assemble",
    "congruence_from_pairs",
    "delta",
    "frame_from_covers",
    "frame_from_poset",
    "named",
    "nabla",
    "sigma",
    "skula_biframe",
    "tower",
]
