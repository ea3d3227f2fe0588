"""Domain types, input validation, and rolling-radius parameter conversions.

All lengths and angles are radians on the unit-curvature scale; there is no
unit-conversion layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateError, DomainError, ValidationError

# Relative tolerance for closed-form identities (round trips and the like).
IDENTITY_RTOL = 1e-12

# Slack allowed when checking n*S >= H^2 on user-supplied data.
CAUCHY_SLACK = 1e-9


@dataclass(frozen=True)
class CurvatureBounds:
    """Ambient data: hypersurface dimension n, Ricci lower bound k of the
    surrounding space, sectional upper bound K of the surrounding space."""

    n: int
    k: float
    K: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError(f"dimension n must be an integer >= 1, got {self.n}")
        if not self.k > 0:
            raise ValidationError(f"Ricci lower bound k must be > 0, got {self.k}")
        if not self.K > 0:
            raise ValidationError(f"sectional upper bound K must be > 0, got {self.K}")

    @classmethod
    def unit_sphere(cls, n: int) -> "CurvatureBounds":
        """Preset for the round unit (n+1)-sphere: k = n, K = 1 exactly."""
        return cls(n=n, k=float(n), K=1.0)

    @property
    def is_unit_sphere(self) -> bool:
        return self.k == float(self.n) and self.K == 1.0


@dataclass(frozen=True)
class HypersurfaceData:
    """Extrinsic data of the hypersurface: max mean curvature magnitude
    H_sigma, max squared second-fundamental-form norm S_sigma, rolling
    radius roll_R."""

    H_sigma: float
    S_sigma: float
    roll_R: float

    def __post_init__(self):
        if not self.H_sigma >= 0:
            raise ValidationError(f"H_sigma must be >= 0, got {self.H_sigma}")
        if not self.S_sigma >= 0:
            raise ValidationError(f"S_sigma must be >= 0, got {self.S_sigma}")
        if not self.roll_R > 0:
            raise ValidationError(f"rolling radius must be > 0, got {self.roll_R}")

    @property
    def totally_geodesic(self) -> bool:
        return self.S_sigma == 0.0


def validate_pair(cb: CurvatureBounds, hs: HypersurfaceData) -> None:
    """Reject data violating n*S_sigma >= H_sigma^2 (up to 1e-9 slack)."""
    if cb.n * hs.S_sigma < hs.H_sigma**2 * (1.0 - CAUCHY_SLACK):
        raise ValidationError(
            f"n*S_sigma >= H_sigma^2 violated: "
            f"{cb.n}*{hs.S_sigma} < {hs.H_sigma}^2"
        )


@dataclass(frozen=True)
class RollParams:
    """Dimensionless rolling parameter t_R and optimization range r = min(t_R, 1)."""

    t_R: float
    r: float


@dataclass(frozen=True)
class BoundReport:
    """All computed eigenvalue lower bounds for one input, with flags.

    ``margin`` is ``lambda1_ref - best_applicable`` when a reference
    eigenvalue was supplied, else None.  ``c_r`` and the roll parameters are
    None on the totally geodesic route (S_sigma = 0), where every bound
    collapses to the ambient baseline k/2.
    """

    c_r: float | None
    bound_thm12: float
    bound_thm13: float
    bound_cor14: float
    bound_cor15: float
    bound_cw: float
    applicable_thm13: bool
    degenerate: bool
    t_R: float | None = None
    r: float | None = None
    best_applicable: float = float("nan")
    lambda1_ref: float | None = None
    margin: float | None = None

    @property
    def vacuous(self) -> dict[str, bool]:
        """Which bounds are <= 0 (valid inequalities, but vacuous for lambda1 > 0)."""
        return {
            name: getattr(self, name) <= 0.0
            for name in (
                "bound_thm12",
                "bound_thm13",
                "bound_cor14",
                "bound_cor15",
                "bound_cw",
            )
        }


def t_of_R(cb: CurvatureBounds, hs: HypersurfaceData) -> RollParams:
    """Convert the rolling radius R to the dimensionless parameter t_R.

    R = arctan(t_R * sqrt(K/S_sigma)) / sqrt(K), so
    t_R = sqrt(S_sigma/K) * tan(sqrt(K) * R), and r = min(t_R, 1).
    """
    if hs.S_sigma == 0.0:
        raise DegenerateError("S_sigma = 0: use the totally geodesic route")
    x = math.sqrt(cb.K) * hs.roll_R
    if not 0.0 < x < math.pi / 2:
        raise DomainError(
            f"sqrt(K)*roll_R = {x} outside (0, pi/2); arctan parametrization undefined"
        )
    t = math.sqrt(hs.S_sigma / cb.K) * math.tan(x)
    return RollParams(t_R=t, r=min(t, 1.0))


def R_of_t(cb: CurvatureBounds, S_sigma: float, t: float) -> float:
    """Inverse conversion: rolling radius from the dimensionless parameter."""
    if S_sigma == 0.0:
        raise DegenerateError("S_sigma = 0: rolling parametrization undefined")
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    return math.atan(t * math.sqrt(cb.K / S_sigma)) / math.sqrt(cb.K)


def thm13_threshold(cb: CurvatureBounds, S_sigma: float) -> float:
    """Smallest rolling radius for which the closed-form bound applies:
    arctan(0.5 * sqrt(K/S_sigma)) / sqrt(K)."""
    if S_sigma == 0.0:
        raise DegenerateError("S_sigma = 0: threshold vacuous")
    return math.atan(0.5 * math.sqrt(cb.K / S_sigma)) / math.sqrt(cb.K)


def check_thm13_condition(cb: CurvatureBounds, hs: HypersurfaceData) -> bool:
    """True iff roll_R >= arctan(0.5 * sqrt(K/S_sigma)) / sqrt(K)."""
    return hs.roll_R >= thm13_threshold(cb, hs.S_sigma)
