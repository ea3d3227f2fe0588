"""Eigenvalue lower bounds: the optimized tube constant C(r), the two main
bounds, their sphere corollaries, the ambient baseline k/2, and the pinching
constant eta(delta)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import families
from .errors import DegenerateError, DomainError
from .params import (
    BoundReport,
    CurvatureBounds,
    HypersurfaceData,
    check_thm13_condition,
    t_of_R,
    validate_pair,
)

GRID_POINTS = 4096
GOLDEN_TOL = 1e-9
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def c_objective(n: int, K: float, S_sigma: float, t):
    """Objective of the sup defining C(r); accepts scalar or array t in (0, 1)."""
    t = np.asarray(t, dtype=float)
    return (
        -(n * K * t + n * S_sigma) / ((1.0 - t) * math.sqrt(S_sigma))
        - math.sqrt(K) / np.arctan(t * math.sqrt(K / S_sigma))
    )


def c_constant(
    n: int,
    K: float,
    S_sigma: float,
    r: float,
    grid_points: int = GRID_POINTS,
    golden_tol: float = GOLDEN_TOL,
) -> float:
    """Supremum over t in (0, r) of the tube-cutoff objective.

    Deterministic: a uniform grid of at least 4096 points on (eps, r - eps)
    with eps = 1e-8 * r, followed by golden-section refinement around the best
    grid point down to a bracket of width golden_tol * r.
    """
    if S_sigma == 0.0:
        raise DegenerateError("S_sigma = 0: C(r) undefined, use the k/2 baseline")
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r}")
    m = max(int(grid_points), 4096)
    eps = 1e-8 * r
    ts = np.linspace(eps, r - eps, m)
    vals = c_objective(n, K, S_sigma, ts)
    i = int(np.argmax(vals))
    best = float(vals[i])

    a = ts[max(i - 1, 0)]
    b = ts[min(i + 1, m - 1)]
    c1 = b - _INVPHI * (b - a)
    c2 = a + _INVPHI * (b - a)
    f1 = float(c_objective(n, K, S_sigma, c1))
    f2 = float(c_objective(n, K, S_sigma, c2))
    while b - a > golden_tol * r:
        if f1 < f2:
            a, c1, f1 = c1, c2, f2
            c2 = a + _INVPHI * (b - a)
            f2 = float(c_objective(n, K, S_sigma, c2))
        else:
            b, c2, f2 = c2, c1, f1
            c1 = b - _INVPHI * (b - a)
            f1 = float(c_objective(n, K, S_sigma, c1))
    return max(best, f1, f2)


def c_closed_form_lower(n: int, K: float, S_sigma: float) -> float:
    """Uniform closed-form lower estimate for C(r):

        -(n K + 2 sqrt(S K) / arctan(sqrt(K)) + 2 n sqrt(S)).
    """
    if S_sigma == 0.0:
        raise DegenerateError("S_sigma = 0: use the k/2 baseline")
    return -(
        n * K
        + 2.0 * math.sqrt(S_sigma * K) / math.atan(math.sqrt(K))
        + 2.0 * n * math.sqrt(S_sigma)
    )


def case_i_s0(n: int, K: float, S_sigma: float) -> float:
    """Balancing point s0 of the small-S branch behind c_closed_form_lower:

        s0 = [sqrt(S) + n (sqrt(S/K) + sqrt(K)) arctan(sqrt(K))]^-1.
    """
    if S_sigma == 0.0:
        raise DegenerateError("S_sigma = 0: s0 undefined")
    return 1.0 / (
        math.sqrt(S_sigma)
        + n
        * (math.sqrt(S_sigma / K) + math.sqrt(K))
        * math.atan(math.sqrt(K))
    )


def choi_wang(k: float) -> float:
    """Baseline lower bound k/2 for the minimal case."""
    if not k > 0:
        raise DomainError(f"k must be > 0, got {k}")
    return k / 2.0


def bound_theorem12(
    cb: CurvatureBounds,
    hs: HypersurfaceData,
    grid_points: int = GRID_POINTS,
    golden_tol: float = GOLDEN_TOL,
) -> float:
    """Rolling-radius bound k/2 + (H/2) (C(r) - n/(n+1) H).

    H_sigma = 0 kills the curvature term, so the value is k/2 exactly and no
    rolling data is needed; S_sigma = 0 routes to k/2 as well.
    """
    validate_pair(cb, hs)
    if hs.H_sigma == 0.0 or hs.S_sigma == 0.0:
        return cb.k / 2.0
    roll = t_of_R(cb, hs)
    c = c_constant(cb.n, cb.K, hs.S_sigma, roll.r, grid_points, golden_tol)
    return cb.k / 2.0 + (hs.H_sigma / 2.0) * (c - cb.n / (cb.n + 1.0) * hs.H_sigma)


def _penalty13(n: int, K: float, H_sigma: float, S_sigma: float) -> float:
    return (
        n * K
        + 2.0 * math.sqrt(S_sigma * K) / math.atan(math.sqrt(K))
        + 2.0 * n * math.sqrt(S_sigma)
        + n / (n + 1.0) * H_sigma
    )


def bound_theorem13(cb: CurvatureBounds, hs: HypersurfaceData) -> float:
    """Closed-form bound k/2 - (H/2) (n K + 2 sqrt(S K)/arctan(sqrt(K))
    + 2 n sqrt(S) + n/(n+1) H).  Valid once the rolling radius clears
    ``thm13_threshold``; computed regardless, flagged by the caller."""
    validate_pair(cb, hs)
    if hs.H_sigma == 0.0:
        return cb.k / 2.0
    return cb.k / 2.0 - (hs.H_sigma / 2.0) * _penalty13(
        cb.n, cb.K, hs.H_sigma, hs.S_sigma
    )


def bound_corollary14(cb: CurvatureBounds, S_sigma: float) -> float:
    """Curvature-only variant of bound_theorem13 with H eliminated via
    H <= sqrt(n S)."""
    if S_sigma < 0:
        raise DomainError(f"S_sigma must be >= 0, got {S_sigma}")
    if S_sigma == 0.0:
        return cb.k / 2.0
    H = math.sqrt(cb.n * S_sigma)
    return cb.k / 2.0 - (H / 2.0) * _penalty13(cb.n, cb.K, H, S_sigma)


def bound_corollary15_sphere(n: int, H_sigma: float, S_sigma: float) -> float:
    """Unit-sphere specialization (k = n, K = 1):

        n/2 - (H/2) (n + (8 + 2 n pi)/pi sqrt(S) + n/(n+1) H).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if H_sigma < 0 or S_sigma < 0:
        raise DomainError("H_sigma and S_sigma must be >= 0")
    return n / 2.0 - (H_sigma / 2.0) * (
        n
        + (8.0 + 2.0 * n * math.pi) / math.pi * math.sqrt(S_sigma)
        + n / (n + 1.0) * H_sigma
    )


@dataclass(frozen=True)
class Corollary16Report:
    """Outcome of the volume-pinching inequality check.

    lhs  = average of S over the hypersurface,
    rhs  = sphere bound times the volume-deficit factor 1 - Vol^2(S^n)/Vol^2,
    slack = lhs - rhs.  ``applicable`` is False when Vol < Vol(S^n), in which
    case the inequality asserts nothing (the numbers are still reported).
    """

    applicable: bool
    lhs: float
    rhs: float
    slack: float
    equality: bool


def check_corollary16_i(
    n: int,
    vol_sigma: float,
    int_S: float,
    H_sigma: float,
    S_sigma: float,
    tol: float = 1e-9,
) -> Corollary16Report:
    """Evaluate the volume-pinching inequality and report its slack."""
    if vol_sigma <= 0:
        raise DomainError(f"vol_sigma must be > 0, got {vol_sigma}")
    vol_sn = families.vol_unit_sphere(n)
    applicable = vol_sigma >= vol_sn
    lhs = int_S / vol_sigma
    rhs = bound_corollary15_sphere(n, H_sigma, S_sigma) * (
        1.0 - vol_sn**2 / vol_sigma**2
    )
    slack = lhs - rhs
    equality = applicable and abs(slack) < tol and S_sigma == 0.0
    return Corollary16Report(
        applicable=applicable, lhs=lhs, rhs=rhs, slack=slack, equality=equality
    )


def eta_of_delta(n: int, delta: float, tol: float = 1e-10) -> float:
    """Smallest curvature level eta > 0 forced by a volume excess of (1+delta).

    With c(delta) = 1 - (1+delta)^-2 and G(S) = max(0, sphere bound at
    H = sqrt(n S)), eta is the unique positive root of S = c * G(S), found by
    bisection on [0, c*n/2] to absolute tolerance ``tol``.  This elimination
    of H via the Cauchy inequality is a derived construction; the source
    theorem only asserts existence.
    """
    if delta <= 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    c = 1.0 - (1.0 + delta) ** -2

    def f(S: float) -> float:
        return S - c * max(0.0, bound_corollary15_sphere(n, math.sqrt(n * S), S))

    lo, hi = 0.0, c * n / 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def compute_report(
    cb: CurvatureBounds,
    hs: HypersurfaceData,
    lambda1_ref: float | None = None,
    grid_points: int = GRID_POINTS,
    golden_tol: float = GOLDEN_TOL,
) -> BoundReport:
    """Evaluate every bound for one input and aggregate flags and margin.

    Applicability used for the margin: the rolling-radius bound always
    applies (k/2 on the totally geodesic route); the closed-form bound and
    its curvature-only variant require the rolling condition; the sphere
    bound additionally requires the unit-sphere ambient (k = n, K = 1); the
    k/2 baseline requires H_sigma = 0.
    """
    validate_pair(cb, hs)
    degenerate = hs.S_sigma == 0.0
    bound_cw = choi_wang(cb.k)

    if degenerate:
        c_r = None
        t_R = None
        r = None
        applicable_13 = True  # vacuous: threshold -> 0 as S -> 0
        b12 = bound_cw
        b13 = bound_cw
        b14 = bound_cw
        b15 = bound_corollary15_sphere(cb.n, hs.H_sigma, hs.S_sigma)
    else:
        roll = t_of_R(cb, hs)
        t_R, r = roll.t_R, roll.r
        c_r = c_constant(cb.n, cb.K, hs.S_sigma, r, grid_points, golden_tol)
        applicable_13 = check_thm13_condition(cb, hs)
        if hs.H_sigma == 0.0:
            b12 = cb.k / 2.0
        else:
            b12 = cb.k / 2.0 + (hs.H_sigma / 2.0) * (
                c_r - cb.n / (cb.n + 1.0) * hs.H_sigma
            )
        b13 = bound_theorem13(cb, hs)
        b14 = bound_corollary14(cb, hs.S_sigma)
        b15 = bound_corollary15_sphere(cb.n, hs.H_sigma, hs.S_sigma)

    candidates = [b12]
    if applicable_13:
        candidates.append(b13)
        candidates.append(b14)
        if cb.is_unit_sphere:
            candidates.append(b15)
    if hs.H_sigma == 0.0 or degenerate:
        candidates.append(bound_cw)
    best = max(candidates)

    margin = None if lambda1_ref is None else lambda1_ref - best
    return BoundReport(
        c_r=c_r,
        bound_thm12=b12,
        bound_thm13=b13,
        bound_cor14=b14,
        bound_cor15=b15,
        bound_cw=bound_cw,
        applicable_thm13=applicable_13,
        degenerate=degenerate,
        t_R=t_R,
        r=r,
        best_applicable=best,
        lambda1_ref=lambda1_ref,
        margin=margin,
    )
