"""Bergman reproducing kernels over the normed division algebras.

Exact octonion/quaternion/complex arithmetic, the Cauchy and Bergman
kernels of the half space and unit ball, finite-difference analyticity
operators, seeded importance-sampled quadrature, and a verification CLI
that certifies the defining identities numerically.
"""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401
    DimensionMismatchError,
    Element,
    MultiplicationTable,
    UnsupportedDimensionError,
    W,
    associator,
    build_table,
    conj,
    inverse,
    mul,
    norm,
)
from .analysis import (  # noqa: F401
    AnalyticityReport,
    Decay,
    FieldFunction,
    PointOutsideDomainError,
    StencilSpec,
    analyticity_report,
    apply_left_D,
    apply_left_Dbar,
    apply_right_D,
    laplacian,
)
from .kernels import (  # noqa: F401
    InvalidParameterError,
    KernelParams,
    OutOfBallError,
    OutOfHalfSpaceError,
    SingularPointError,
    bergman_ball,
    bergman_ball_unit,
    bergman_halfspace,
    cauchy_E,
    cauchy_kernel_field,
    dE_dx0,
    make_test_function,
    sphere_area,
)
from .integrate import (  # noqa: F401
    BoundaryPointError,
    Estimate,
    NonFiniteSampleError,
    QuadratureSpec,
    QuadratureSpecError,
    cauchy_integral,
    gaussian_reference,
    inner_product_ball,
    inner_product_halfspace,
    integrate_halfspace,
    l2_distance_halfspace,
)
from .report import (  # noqa: F401
    ConfigError,
    Entry,
    ScenarioConfig,
    VerificationReport,
    emit_report,
    validate_report,
)
from .scenarios import run_scenario  # noqa: F401
