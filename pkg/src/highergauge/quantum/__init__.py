"""Brute-force quantum model on the full configuration Hilbert space."""

from .algebra import Cyclotomic, OperatorAlgebra, PropertyResult, ShiftClockSum, run_algebra_suite
from .ground import GroundSpace, GroundState, SpectrumReport, hamiltonian_spectrum, preserves_ray
from .hilbert import (
    DEFAULT_MAX_COUNT,
    DEFAULT_MAX_DIM,
    CapExceeded,
    HilbertSpace,
    MonomialOperator,
    count_kernel,
)
from .projectors import (
    OracleReport,
    RationalMatrixOperator,
    RationalVector,
    counting_gsd,
    gsd_oracle,
    projector_A0,
    projector_B0,
    trace_gsd,
)

__all__ = [
    "CapExceeded",
    "Cyclotomic",
    "DEFAULT_MAX_COUNT",
    "DEFAULT_MAX_DIM",
    "GroundSpace",
    "GroundState",
    "HilbertSpace",
    "MonomialOperator",
    "OperatorAlgebra",
    "OracleReport",
    "PropertyResult",
    "RationalMatrixOperator",
    "RationalVector",
    "ShiftClockSum",
    "SpectrumReport",
    "count_kernel",
    "counting_gsd",
    "gsd_oracle",
    "hamiltonian_spectrum",
    "preserves_ray",
    "projector_A0",
    "projector_B0",
    "run_algebra_suite",
    "trace_gsd",
]
