"""Multiplicative metric spaces: log-domain metrics, diagnostics, and solvers."""

from .metric_core import (
    MulDistance,
    PosVec,
    RealVec,
    ComplexVec,
    SampledPosFunction,
    SegmentPoint,
    MulBall,
    mabs,
    dist_pos_vec,
    dist_exp,
    dist_product,
    dist_function_sup,
    dist_segment,
    ball_contains,
    reverse_triangle_gap,
)
from .spaces import SpaceInstance, SelfMap
from .fixed_point import (
    ContractionSpec,
    SolverReport,
    IterationTrace,
    banach_solve,
    ball_solve,
    power_solve,
    kannan_solve,
    chatterjea_solve,
    estimate_lambda,
    uniqueness_probe,
    apriori_bound,
)
from .verifier import verify_axioms, verify_contraction, AxiomReport, ContractionReport

__all__ = [
    "MulDistance", "PosVec", "RealVec", "ComplexVec", "SampledPosFunction",
    "SegmentPoint", "MulBall", "mabs", "dist_pos_vec", "dist_exp",
    "dist_product", "dist_function_sup", "dist_segment", "ball_contains",
    "reverse_triangle_gap", "SpaceInstance", "SelfMap", "ContractionSpec",
    "SolverReport", "IterationTrace", "banach_solve", "ball_solve",
    "power_solve", "kannan_solve", "chatterjea_solve", "estimate_lambda",
    "uniqueness_probe", "apriori_bound", "verify_axioms", "verify_contraction",
    "AxiomReport", "ContractionReport",
]

__version__ = "0.1.0"
