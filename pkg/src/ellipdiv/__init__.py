"""Elliptic divisibility sequences over Q: Ward's recurrence sequences and
denominator sequences of point multiples, with the local data that relates them."""
from .curve import (
    IDENTITY,
    Point,
    WeierstrassCurve,
    add,
    make_curve,
    negate,
    on_curve,
    parse_curve,
    parse_point,
    scalar_mul,
)
from .divpoly import (
    TwistedValue,
    check_product_identity,
    eval_x_only,
    omega,
    phi,
    phi_homog,
    psi,
    psi_sq_homog,
)
from .recurrence import (
    check_g_multiplicative_law,
    check_g_valuation_law,
    check_ward_triple,
    cheon_g,
    edsa_generate,
    verify_main_theorem,
    verify_torsion_case,
)
from .reduction import M_of, is_singular, r_of, reduce_point
from .sequences import (
    PointContext,
    SequenceRecord,
    beta,
    g,
    g_valuation,
    h,
    make_context,
    sequence_table,
)

__version__ = "0.1.0"
