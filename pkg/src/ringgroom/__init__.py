"""Two-period traffic grooming on unidirectional rings with grooming ratio 4."""

from .model import (
    Block,
    Decomposition,
    ProblemInstance,
    Shape,
    VerificationReport,
    Wavelength,
    count_triangles,
    drop_cost,
    verify,
)

__all__ = [
    "Block",
    "Decomposition",
    "ProblemInstance",
    "Shape",
    "VerificationReport",
    "Wavelength",
    "count_triangles",
    "drop_cost",
    "verify",
]
__version__ = "0.1.0"
