"""Simulation of a nonlocal active/quiescent cell model under acidity.

Submodules: :mod:`grid`, :mod:`kernels`, :mod:`nonlocal_terms`, :mod:`model`,
:mod:`stepper`, :mod:`bounds` and the :mod:`harness` subpackage.
"""
from .bounds import (
    BoundParams,
    DomainGeometry,
    apriori_sup_bound,
    growth_constant_C3,
    sobolev_constant,
    verify_moser_exponents,
)
from .errors import (
    AcidsimError,
    ConfigError,
    ExponentDomainError,
    InvalidExponentRange,
    NegativeField,
    NonDivisibleSpacing,
    NonpositiveDiffusivity,
    UnknownScenario,
    UnsupportedKind,
)
from .grid import Grid1D, build_grid
from .kernels import GAUSS_SHIFT, HOLLING3, LOGISTIC, UNIFORM, KernelSpec, eval_kernel, kernel_from_name
from .model import InitialData, ModelSpec, State, paper_coefficients, paper_initial_data
from .nonlocal_terms import ConvolutionCache, build_matrix, convolve
from .stepper import BLOWUP, COMPLETED, RunOutcome, SolverConfig, run, step

__version__ = "0.1.0"
