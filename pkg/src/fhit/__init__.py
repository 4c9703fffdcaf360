"""Validated numerics for fiberwise hyperbolic invariant tori in
quasi-periodic skew-product maps.

A non-rigorous continuation solver produces candidate Fourier data; the
validator re-derives every bound in directed-rounding interval arithmetic
(rigorous FFT, DFT error constants, the boxes method) and checks the
Newton-Kantorovich conditions, emitting a machine-checkable certificate.
"""

from .interval import ComplexInterval, RealInterval, golden_mean, pi_enclosure
from .dft_error import GridSpec, StripPair, cn_1d_even, cn_bound, cn_general
from .series import FourierSeries, RhoFit, build_series, detect_noise_floor, fit_rho
from .fmatrix import FourierMatrix, InverseEnclosure, mat_inverse_grid, mat_norm, mat_product_grid
from .boxes import BoxGrid, enclose_series_on_boxes, make_boxes, sup_norm_on_strip, thicken_fiber
from .maps import FiberPoint, ForcedStandardMap, SkewMapParams, get_map
from .validator import (
    CandidateData,
    Certificate,
    ValidationParams,
    b_bound,
    invariance_error,
    invertibility_error,
    lambda_bound,
    lambda_u_general,
    radii,
    reducibility_error,
    sigma_bound,
    validate,
)
from .solver import SolverState, continue_to, export_candidate, initial_state, solve_at
from .fcf import load_candidate, load_fcf, parse_report, save_candidate, save_fcf, write_report
from .cli import cli_dispatch

__all__ = [
    "BoxGrid",
    "CandidateData",
    "Certificate",
    "ComplexInterval",
    "FiberPoint",
    "ForcedStandardMap",
    "FourierMatrix",
    "FourierSeries",
    "GridSpec",
    "InverseEnclosure",
    "RealInterval",
    "RhoFit",
    "SkewMapParams",
    "SolverState",
    "StripPair",
    "ValidationParams",
    "b_bound",
    "build_series",
    "cli_dispatch",
    "cn_1d_even",
    "cn_bound",
    "cn_general",
    "continue_to",
    "detect_noise_floor",
    "enclose_series_on_boxes",
    "export_candidate",
    "fit_rho",
    "get_map",
    "golden_mean",
    "initial_state",
    "invariance_error",
    "invertibility_error",
    "lambda_bound",
    "lambda_u_general",
    "load_candidate",
    "load_fcf",
    "make_boxes",
    "mat_inverse_grid",
    "mat_norm",
    "mat_product_grid",
    "parse_report",
    "pi_enclosure",
    "radii",
    "reducibility_error",
    "save_candidate",
    "save_fcf",
    "sigma_bound",
    "solve_at",
    "sup_norm_on_strip",
    "thicken_fiber",
    "validate",
    "write_report",
]
