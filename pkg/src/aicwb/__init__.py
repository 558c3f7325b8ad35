"""Exact workbench for truncated absolute integral closures of reduced rings."""

from .aic import (
    AicApprox,
    Pullback,
    PullbackSpec,
    aic_discriminator,
    build_pullback_aic,
    build_universal_aic_approx,
    factor_monic_into_linears,
    idempotent_census,
    integral_filter,
    tightness_witness,
)
from .exact_arith import GF, QQ, Polynomial, RationalFunction, poly_divmod, poly_gcd, resultant, squarefree_part
from .parsing import format_poly, parse_poly_expr
from .rings import (
    RingPresentation,
    component_quotient,
    idempotents,
    is_regular,
    localize,
    minimal_primes,
    total_quotient_ring,
)
from .tower import Tower

__version__ = "0.1.0"
