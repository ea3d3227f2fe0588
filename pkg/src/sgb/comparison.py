"""Comparison functions controlling the distance function to a hypersurface
under a sectional-curvature ceiling, plus a fixed-step RK4 integrator for the
underlying second-order ODE y'' + kappa(t) y = 0."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, StepError

# Denominators smaller than this raise DomainError instead of overflowing.
DENOM_FLOOR = 1e-12


def kasue_h(K: float, Gamma: float, t: float) -> float:
    """Solution of y'' + K y = 0 with y(0) = 1, y'(0) = Gamma (constant K > 0)."""
    s = math.sqrt(K)
    return math.cos(s * t) + (Gamma / s) * math.sin(s * t)


def kasue_h_prime(K: float, Gamma: float, t: float) -> float:
    s = math.sqrt(K)
    return -s * math.sin(s * t) + Gamma * math.cos(s * t)


def kasue_f(K: float, t: float) -> float:
    """Solution of y'' + K y = 0 with y(0) = 0, y'(0) = 1 (constant K > 0)."""
    s = math.sqrt(K)
    return math.sin(s * t) / s


def h_first_zero(K: float, S_sigma: float) -> float:
    """First zero of kasue_h(K, -sqrt(S_sigma), .): arctan(sqrt(K/S)) / sqrt(K)."""
    if S_sigma <= 0:
        raise DomainError(f"S_sigma must be > 0, got {S_sigma}")
    return math.atan(math.sqrt(K / S_sigma)) / math.sqrt(K)


@dataclass(frozen=True)
class OdeSolution:
    """Uniform-grid samples of a scalar second-order ODE solution."""

    grid: np.ndarray
    values: np.ndarray
    derivative_values: np.ndarray

    def __post_init__(self):
        if not np.all(np.diff(self.grid) > 0):
            raise ValueError("grid must be strictly increasing")


def solve_comparison_ode(
    kappa: Callable[[float], float],
    y0: float,
    y0p: float,
    T: float,
    step: float = 1e-3,
) -> OdeSolution:
    """Integrate y'' + kappa(t) y = 0 with classical RK4 at a fixed step.

    The system is integrated as (y, y') with right-hand side
    (y', -kappa(t) y); samples are returned at uniform steps covering [0, T].
    """
    if T <= 0:
        raise DomainError(f"T must be > 0, got {T}")
    if step <= 0:
        raise DomainError(f"step must be > 0, got {step}")
    if step > T / 16:
        raise StepError(f"step {step} too coarse for T={T}; need step <= T/16")

    n = int(math.ceil(T / step))
    grid = np.linspace(0.0, T, n + 1)
    h = T / n
    ys = np.empty(n + 1)
    vs = np.empty(n + 1)
    y, v = float(y0), float(y0p)
    ys[0], vs[0] = y, v
    for i in range(n):
        t = grid[i]
        k1y = v
        k1v = -kappa(t) * y
        k2y = v + 0.5 * h * k1v
        k2v = -kappa(t + 0.5 * h) * (y + 0.5 * h * k1y)
        k3y = v + 0.5 * h * k2v
        k3v = -kappa(t + 0.5 * h) * (y + 0.5 * h * k2y)
        k4y = v + h * k3v
        k4v = -kappa(t + h) * (y + h * k3y)
        y += (h / 6.0) * (k1y + 2 * k2y + 2 * k3y + k4y)
        v += (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v)
        ys[i + 1], vs[i + 1] = y, v
    return OdeSolution(grid=grid, values=ys, derivative_values=vs)


def laplacian_comparison(n: int, K: float, S_sigma: float, rho: float) -> float:
    """Lower bound for the Laplacian of the distance function at distance rho:

        C(rho) = -(n K tan(sqrt(K) rho) + n sqrt(S K))
                 / (sqrt(K) - sqrt(S) tan(sqrt(K) rho))

    valid for 0 <= rho < arctan(sqrt(K/S)) / sqrt(K).  Equals n h'/h with
    h = kasue_h(K, -sqrt(S), .).
    """
    if S_sigma <= 0:
        raise DomainError(f"S_sigma must be > 0, got {S_sigma}")
    if rho < 0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    sK = math.sqrt(K)
    if sK * rho >= math.pi / 2:
        raise DomainError(f"rho = {rho} at or beyond the comparison endpoint")
    tn = math.tan(sK * rho)
    denom = sK - math.sqrt(S_sigma) * tn
    if denom < DENOM_FLOOR:
        raise DomainError(
            f"rho = {rho} too close to the comparison endpoint "
            f"{h_first_zero(K, S_sigma)} (denominator {denom})"
        )
    return -(n * K * tn + n * math.sqrt(S_sigma * K)) / denom


def f_proof(n: int, K: float, S_sigma: float, rho_a: float) -> float:
    """The tube-cutoff objective C(rho_a) - 1/rho_a.

    Under rho_a = arctan(t sqrt(K/S)) / sqrt(K) this equals
    -(n K t + n S) / ((1-t) sqrt(S)) - sqrt(K) / arctan(t sqrt(K/S)).
    """
    if rho_a <= 0:
        raise DomainError(f"rho_a must be > 0, got {rho_a}")
    return laplacian_comparison(n, K, S_sigma, rho_a) - 1.0 / rho_a
