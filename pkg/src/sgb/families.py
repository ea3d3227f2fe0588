"""Analytic hypersurface families in the unit 3-sphere, with exact curvature,
volume, rolling radius, and first-eigenvalue data.  These are the ground
truth for the verification pipeline; n is fixed to 2 (surfaces in S^3)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .params import CurvatureBounds, HypersurfaceData

SPHERE = "sphere"
TORUS = "torus"


@dataclass(frozen=True)
class FamilyPoint:
    """Exact data for one member of an analytic family.

    roll_inner / roll_outer are the focal distances on the two sides of the
    surface; bounds consume min(roll_inner, roll_outer), which can only weaken
    them (which side the cutoff argument prefers is not computable from
    (H, S) alone).
    """

    family: str
    param: float
    H_sigma: float
    S_sigma: float
    roll_inner: float
    roll_outer: float
    lambda1: float
    volume: float
    n: int = 2

    @property
    def roll_min(self) -> float:
        return min(self.roll_inner, self.roll_outer)

    def curvature_bounds(self) -> CurvatureBounds:
        return CurvatureBounds.unit_sphere(self.n)

    def hypersurface_data(self) -> HypersurfaceData:
        return HypersurfaceData(
            H_sigma=self.H_sigma, S_sigma=self.S_sigma, roll_R=self.roll_min
        )


def geodesic_sphere_data(rho0: float) -> FamilyPoint:
    """Distance sphere of radius rho0 in S^3.

    Both principal curvatures are cot(rho0); the induced metric is the round
    2-sphere of radius sin(rho0), so lambda1 = 2/sin^2(rho0).  The inner cut
    locus is the ball center at distance rho0; the outer one is the antipodal
    center at pi - rho0, capped at pi/2 where the arctan parametrization of
    the rolling radius ends.
    """
    if not 0.0 < rho0 <= math.pi / 2:
        raise DomainError(f"rho0 must lie in (0, pi/2], got {rho0}")
    # cot(pi/2) is an exact zero: the equator is totally geodesic.
    cot = 0.0 if rho0 == math.pi / 2 else math.cos(rho0) / math.sin(rho0)
    s2 = math.sin(rho0) ** 2
    return FamilyPoint(
        family=SPHERE,
        param=rho0,
        H_sigma=2.0 * abs(cot),
        S_sigma=2.0 * cot * cot,
        roll_inner=rho0,
        roll_outer=min(math.pi - rho0, math.pi / 2),
        lambda1=2.0 / s2,
        volume=4.0 * math.pi * s2,
    )


def product_torus_data(a: float) -> FamilyPoint:
    """Product torus S^1(a) x S^1(b) in S^3, b = sqrt(1 - a^2).

    Principal curvatures b/a and -a/b, flat product metric with
    lambda1 = min(1/a^2, 1/b^2), area 4 pi^2 a b.  The normal great circles
    hit the two core circles at distances arccos(a) (side of the radius-a
    core, labeled inner) and pi/2 - arccos(a) (outer).
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie in (0, 1), got {a}")
    b2 = 1.0 - a * a
    b = math.sqrt(b2)
    alpha = math.acos(a)
    return FamilyPoint(
        family=TORUS,
        param=a,
        H_sigma=abs(b2 - a * a) / (a * b),
        S_sigma=b2 / (a * a) + a * a / b2,
        roll_inner=alpha,
        roll_outer=math.pi / 2 - alpha,
        lambda1=min(1.0 / (a * a), 1.0 / b2),
        volume=4.0 * math.pi**2 * a * b,
    )


def vol_unit_sphere(n: int) -> float:
    """Volume of the round unit n-sphere: 2 pi^((n+1)/2) / Gamma((n+1)/2)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)
