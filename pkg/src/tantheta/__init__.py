"""Eigenvector rotation bounds for off-diagonal perturbations of
self-adjoint operators whose spectrum splits into an in-gap part and the
rest, with sharpness witnesses and numerical certification."""

from .blockmodel import (
    AngleReport,
    BlockMatrix,
    Certificate,
    GapReport,
    assemble,
    certify,
    certify_subordinated,
    random_instance,
    random_subordinated,
    sweep_aposteriori,
)
from .bounds import (
    BoundValue,
    Branch,
    aposteriori_tan_theta,
    apriori_tan_theta,
    best_bound,
    kappa,
    kappa_tan,
    tan_2theta_bound,
    xi,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DispositionError,
    DomainError,
    TightnessError,
)
from .geometry import BoundKind, Disposition, GapGeometry, make_geometry, validity
from .linalg import EigenDecomposition, angle_to_subspace, eigensolve, spectral_norm
from .secular import (
    SecularSolution,
    WitnessMatrix3,
    max_phi,
    phi,
    solve_secular,
    z0_and_beta,
    z_bracket,
)
from .witness import WitnessReport, build_remdel_example, build_xi_witness

__version__ = "0.1.0"
