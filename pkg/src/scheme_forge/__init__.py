"""Exact computations in commutative association schemes, with a focus on vanishing Krein parameters."""

from .catalog import (
    dual_polar_scheme,
    genpw_explicit,
    genpw_param,
    johnson,
    octagon_scheme,
    parse_descriptor,
    pg_scan,
    pg_scheme,
    srg_scheme,
    taylor_scheme,
)
from .designs import (
    SubsetDesign,
    constrain_design,
    eigenspace_support,
    inner_distribution,
    intriguing_set_verdict,
    mac_williams,
)
from .errors import SchemeForgeError
from .exactnum import Scalar, parse_scalar, sqrt_integer
from .linalg import ExactMatrix, RelationMatrix
from .scheme import (
    Scheme,
    SpectralData,
    find_cometric_orderings,
    find_metric_orderings,
    invariant_failures,
    is_Q_antipodal,
    is_Q_bipartite,
    krein_parameter,
    krein_parameters,
    schur_projection_check,
    triple_intersection_check,
    validate_axioms,
)

__all__ = [
    "Scalar",
    "parse_scalar",
    "sqrt_integer",
    "ExactMatrix",
    "RelationMatrix",
    "Scheme",
    "SpectralData",
    "validate_axioms",
    "krein_parameter",
    "krein_parameters",
    "find_cometric_orderings",
    "find_metric_orderings",
    "is_Q_bipartite",
    "is_Q_antipodal",
    "schur_projection_check",
    "triple_intersection_check",
    "invariant_failures",
    "johnson",
    "pg_scheme",
    "srg_scheme",
    "dual_polar_scheme",
    "octagon_scheme",
    "taylor_scheme",
    "genpw_param",
    "genpw_explicit",
    "pg_scan",
    "parse_descriptor",
    "SubsetDesign",
    "inner_distribution",
    "mac_williams",
    "eigenspace_support",
    "constrain_design",
    "intriguing_set_verdict",
    "SchemeForgeError",
]

__version__ = "0.1.0"
