"""Controllability and minimum-energy steering of a satellite under J2, in cylindrical coordinates."""

from ._backend import BACKEND, available_backends
from .controllability import (
    Gramian,
    KalmanMatrix,
    RankReport,
    gramian,
    gramian_quadrature,
    kalman_matrix,
    normalized_jacobian,
    rank_table,
    rank_verdict,
)
from .dynamics import physical_rhs, rhs
from .errors import (
    ArgumentError,
    DivergenceError,
    DomainError,
    J2CtrlError,
    SingularGramianError,
    UncontrollableError,
)
from .linearize import LinearModel, analytic_jacobian, build_model, fd_jacobian
from .model import (
    ALL_CONFIGS,
    P_PAPER,
    P_UNIT,
    PhysicalParams,
    PhysicalState,
    ThrusterConfig,
    from_deviation,
    input_matrix,
    load_params,
    params_for_mode,
    to_deviation,
)
from .simulate import Trajectory, integrate_linear, integrate_nonlinear, rk4_convergence_probe
from .steering import SteeringProblem, SteeringSolution, control_at, sample_control, synthesize

__version__ = "0.1.0"
