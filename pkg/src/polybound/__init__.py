"""Exact decision procedures for lower-boundedness of real polynomials.

Quick use::

    >>> from polybound import parse_poly, decide_lower_bounded, DecideConfig
    >>> p = parse_poly("(x1*x2 - 1)^2 + x2^2")
    >>> decide_lower_bounded(p, DecideConfig(explicit_point=(1, 3))).verdict
    True
"""

from .arith import FElem, PiPoly, Rat, felem_arith, felem_limit, felem_order, felem_sign, pipoly_gcd
from .decide import (
    ConvexityDecision,
    Decision,
    DecideConfig,
    decide_convex,
    decide_lower_bounded,
    decide_nonnegative,
    preprocess,
    sample_point,
)
from .errors import *  # noqa: F401,F403
from .groebner import Budget, GroebnerBasis, IdealSpec, buchberger, eliminate, normal_form, shape_position
from .mpoly import (
    MPoly,
    Point,
    VarOrder,
    evaluate,
    hessian,
    homogenize,
    mp_arith,
    partial_derivative,
    principal_minors,
)
from .oracle import SamplingPlan, find_unbounded_witness, naive_real_root_count, univariate_lower_bounded
from .parser import parse_poly
from .sturm import (
    MINUS_INFINITY,
    MINUS_INFINITY_F,
    EvalPoint,
    SturmReport,
    SturmSeq,
    count_roots_interval,
    sign_at,
    sign_variations,
    sturm_sequence,
    v_count,
)
from .tangency import (
    TangencyReport,
    TangencySystem,
    build_ideal_I,
    build_ideal_J,
    build_tangency_system,
    compute_phi,
    compute_theta,
    square_free_part,
    test_condition_C,
)
from .upoly import UPoly

__version__ = "0.1.0"
