"""Lattice Lipschitz operators on discretized C(K) spaces."""
from .algebra import compose, identity_field, submultiplicativity_check
from .bounds import (
    BoundReport,
    constant_bound,
    lip_norm_estimate,
    lipschitz_majorant,
    llip_norm,
    minimal_envelope,
    ratio_function,
    verify_bound,
    witness_probes,
)
from .errors import LLipError
from .extension import ExtensionSpec, extend, extend_and_diagnose, extension_gap
from .grid import CompactGrid, ContinuityReport, GridFunction, continuity_report, make_interval_grid, tabulate
from .kernels import BACKEND
from .operators import (
    MultiplicationOperator,
    SampleOperator,
    SuperpositionField,
    TensorOperator,
    evaluate,
    multiplication_operator,
    sample_to_superposition,
    saturating_operator,
    tensor_to_superposition,
)
from .pwl import ScalarPWL

__version__ = "0.1.0"
