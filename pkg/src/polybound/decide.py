"""Deciders for lower-boundedness, non-negativity and convexity.

Lower-boundedness samples a point, checks condition (C) there, and reads the
verdict off the Sturm count of phi between ``-inf_F`` and ``-inf``: the
polynomial is bounded below exactly when no tangency value escapes to real
minus infinity.  Non-negativity reduces to lower-boundedness of the
homogenization; convexity to non-negativity of every principal minor of the
Hessian.
"""

import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DimensionMismatch, Inconclusive, NonRational, NotGeneric
from .groebner import Budget
from .mpoly import MPoly, Point, compose, hessian, homogenize, partial_derivative, principal_minors
from .sturm import SturmReport, v_count
from .tangency import TangencyReport, fresh_name, test_condition_C


@dataclass(frozen=True)
class DecideConfig:
    seed: int = 0
    coordinate_bound: int = 10
    max_retries: int = 3
    resource_budget: Budget = field(default_factory=Budget)
    explicit_point: tuple | None = None
    method: str = "quotient"

    def __post_init__(self):
        if self.coordinate_bound <= 0:
            raise ValueError("coordinate_bound must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")
        if self.explicit_point is not None:
            object.__setattr__(self, "explicit_point", Point(self.explicit_point))


@dataclass
class LinearChange:
    """``x = M y``: the decided polynomial is ``p(M y)``."""

    matrix: list

    def __str__(self):
        return "[" + "; ".join(" ".join(str(c) for c in row) for row in self.matrix) + "]"


@dataclass
class Preprocessed:
    poly: MPoly
    change: LinearChange | None = None
    constant: bool = False


@dataclass
class Decision:
    verdict: bool
    point: Point | None
    report: TangencyReport | None
    sturm: SturmReport | None
    timings: dict = field(default_factory=dict)
    retries_used: int = 0
    polynomial: MPoly | None = None
    change: LinearChange | None = None
    reason: str = "sturm"
    failed_points: list = field(default_factory=list)


@dataclass
class ConstantMinor:
    """Shortcut for a constant principal minor: decided by its sign."""

    value: Fraction
    verdict: bool


@dataclass
class ConvexityDecision:
    verdict: bool
    per_minor: list
    first_failure: tuple | None = None


# -- sampling and preprocessing ---------------------------------------------------

def sample_point(n, cfg, attempt):
    """Point for attempt ``attempt``: the explicit point first, then seeded draws."""
    if cfg.explicit_point is not None and attempt == 0:
        if len(cfg.explicit_point) != n:
            raise DimensionMismatch(
                f"explicit point has {len(cfg.explicit_point)} coordinates, expected {n}"
            )
        return cfg.explicit_point
    if n == 0:
        return Point(())
    rng = random.Random(f"{cfg.seed}:{attempt}")
    B = cfg.coordinate_bound
    while True:
        pt = [rng.randint(-B, B) for _ in range(n)]
        if any(pt):
            return Point(pt)


def _det(M):
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    return det


def _uses_all(p):
    return all(not partial_derivative(p, v).is_zero() for v in p.vars)


def preprocess(p, cfg=None):
    """Tag constants; mix the variables by a linear change when some are missing.

    A missing ``xn`` leaves no non-critical tangency points, and any other
    missing variable puts all of them on a hyperplane where ``x1`` cannot
    separate them, so (C) would fail everywhere.
    """
    cfg = cfg or DecideConfig()
    if p.is_constant():
        return Preprocessed(p, None, True)
    if _uses_all(p):
        return Preprocessed(p)
    n = p.nvars
    rng = random.Random(f"{cfg.seed}:linear-change")
    gens = MPoly.gens(p.vars)
    while True:
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if _det(M) == 0:
            continue
        images = {}
        for i, name in enumerate(p.vars):
            img = MPoly.const(0, p.vars)
            for j in range(n):
                if M[i][j]:
                    img = img + gens[j] * M[i][j]
            images[name] = img
        q = compose(p, images)
        if _uses_all(q):
            return Preprocessed(q, LinearChange(M))


# -- deciders -------------------------------------------------------------------------

def _check_rational(p):
    if not p.is_rational():
        raise NonRational("input polynomials must have rational coefficients")


def decide_lower_bounded(p, cfg=None):
    """Is ``p`` bounded below on R^n?  Raises Inconclusive when every sampled point fails (C)."""
    cfg = cfg or DecideConfig()
    _check_rational(p)
    start = time.perf_counter()
    pre = preprocess(p, cfg)
    if pre.constant:
        return Decision(True, None, None, None, {"total": time.perf_counter() - start},
                        0, p, None, "constant")
    q = pre.poly
    failed = []
    for attempt in range(cfg.max_retries + 1):
        a = sample_point(q.nvars, cfg, attempt)
        try:
            report = test_condition_C(q, a, cfg.method, cfg.resource_budget)
        except NotGeneric as exc:
            failed.append((a, str(exc)))
            continue
        if not report.t_good:
            failed.append((a, "condition (C) fails"))
            continue
        t0 = time.perf_counter()
        sturm = v_count(report.phi)
        timings = dict(report.timings)
        timings["sturm"] = time.perf_counter() - t0
        timings["total"] = time.perf_counter() - start
        return Decision(sturm.v == 0, a, report, sturm, timings, attempt, q, pre.change,
                        "sturm", failed)
    raise Inconclusive(
        f"no point passed condition (C) after {cfg.max_retries + 1} attempts: "
        + "; ".join(f"({pt}): {why}" for pt, why in failed)
    )


def decide_nonnegative(p, cfg=None):
    """Is ``p >= 0`` on R^n?  Forms are decided directly, others via homogenization."""
    cfg = cfg or DecideConfig()
    _check_rational(p)
    if p.is_constant():
        c = p.constant_value()
        return Decision(c >= 0, None, None, None, {}, 0, p, None, "constant")
    if p.is_homogeneous():
        return decide_lower_bounded(p, cfg)
    z = fresh_name("z", p.vars)
    return decide_lower_bounded(homogenize(p, z), cfg)


def decide_convex(p, cfg=None):
    """Is ``p`` convex?  Every principal minor of the Hessian must be non-negative."""
    cfg = cfg or DecideConfig()
    _check_rational(p)
    if p.total_degree() <= 1:
        return ConvexityDecision(True, [], None)
    per_minor = []
    for idx, minor in principal_minors(hessian(p)):
        if minor.is_constant():
            c = minor.constant_value()
            result = ConstantMinor(c, c >= 0)
        else:
            mcfg = cfg
            pt = cfg.explicit_point
            if pt is not None:
                dim = minor.nvars if minor.is_homogeneous() else minor.nvars + 1
                if len(pt) != dim:
                    mcfg = replace(cfg, explicit_point=None)
            result = decide_nonnegative(minor, mcfg)
        per_minor.append((idx, result))
        if not result.verdict:
            return ConvexityDecision(False, per_minor, idx)
    return ConvexityDecision(True, per_minor, None)
