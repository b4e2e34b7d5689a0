"""Coordinate calculus in commutative real algebras and local linear convexity checks.

The main entry points are re-exported here::

    from hyperconvex import builtin_algebra, validate_algebra, default_gamma, ball, check_domain
"""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    Algebra,
    StructureTensor,
    builtin_algebra,
    parse_algebra,
    tensor_from_triples,
    validate_algebra,
)
from .checker import (  # noqa: E402
    ConvexityReport,
    Kind,
    PointClassification,
    Verdict,
    check_domain,
    classify_point,
    restricted_hessian,
)
from .domains import (  # noqa: E402
    BoundaryPoint,
    DefiningFunction,
    ball,
    builtin_domain,
    halfspace,
    parse_domain,
    polynomial,
    project_to_boundary,
    sample_boundary,
    signed_quadric,
)
from .gamma import (  # noqa: E402
    GammaFrame,
    bold_components,
    bold_vector,
    default_gamma,
    formal_gradient,
    formal_hessian,
    hadamard_gamma,
    linear_form_value,
    quadratic_form_value,
    random_gamma,
    reconstruct_real,
    vandermonde_gamma,
)
from .hyperplanes import (  # noqa: E402
    AHyperplane,
    TangentFrame,
    constraint_matrix,
    contains,
    embed_real_hyperplane,
    tangent_frame,
)
from .oracle import (  # noqa: E402
    Agreement,
    Outcome,
    ProbeResult,
    cross_validate,
    geometric_probe,
    taylor_residual,
)
