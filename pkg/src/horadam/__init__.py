"""Exact engine for third-order Horadam, generalized Tribonacci and
cube-root geometric-mean sequences."""

from .errors import (
    CapExceeded,
    DomainError,
    HoradamError,
    InconsistencyError,
    NoConvergence,
    PrecisionError,
)
from .geomean import (
    ConvergenceReport,
    ExponentTriple,
    GeoInit,
    geo_exponents,
    geo_term_iterative,
    geo_term_symbolic,
    growth_convergence_report,
    growth_ratio,
)
from .identities import IdentityId, IdentityReport, LambdaFamily, run_catalog
from .power_product import (
    FundamentalExponents,
    fundamental_exponents,
    z_term_closed,
    z_term_direct,
)
from .recurrence import (
    CompanionMatrix,
    RecurrenceParams,
    SequenceSpec,
    StateVector,
    h_sequence,
    t_closed_form,
    t_sequence,
    term_iterative,
    term_matrix,
    v_sequence,
)
from .roots import (
    BinetCoefficients,
    CubicRoots,
    binet_term,
    discriminant,
    fundamental_binet_check,
    solve_cubic,
    v_limit_check,
)

__version__ = "0.1.0"
