"""Non-resonance parameter windows J_n and resonance points.

For phase theta = sqrt(k/eps)*(b-a), the window with index n collects the
eps for which theta - n*pi stays in [lambda, pi - lambda], keeping
|sin(theta)| >= sin(lambda) and the solution formula well conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import InvalidLambdaError, InvalidProblemError

__all__ = [
    "EpsilonWindow",
    "InWindow",
    "NearResonance",
    "window",
    "resonance_points",
    "classify",
    "sample_sequence",
    "theta_of",
    "eps_of_theta",
    "DEFAULT_LAMBDA",
]

DEFAULT_LAMBDA = 0.5


def _check_problem(k: float, a: float, b: float):
    if not k > 0:
        raise InvalidProblemError(f"k must be positive, got {k}")
    if not a < b:
        raise InvalidProblemError(f"need a < b, got a={a}, b={b}")


def _check_lambda(lam: float):
    if not 0.0 < lam < math.pi / 2:
        raise InvalidLambdaError(f"lambda must lie in (0, pi/2), got {lam}")


def theta_of(eps: float, k: float, a: float, b: float) -> float:
    """Phase theta = sqrt(k/eps) * (b - a)."""
    return math.sqrt(k / eps) * (b - a)


def eps_of_theta(theta: float, k: float, a: float, b: float) -> float:
    """Inverse of theta_of: eps = k*((b-a)/theta)^2."""
    return k * ((b - a) / theta) ** 2


@dataclass(frozen=True)
class EpsilonWindow:
    """One closed non-resonance interval [lo, hi] of eps values."""

    n: int
    lo: float
    hi: float
    lam: float
    k: float
    a: float
    b: float

    def __contains__(self, eps: float) -> bool:
        return self.lo <= eps <= self.hi


@dataclass(frozen=True)
class InWindow:
    """eps sits inside window n; theta is the phase sqrt(k/eps)*(b-a)."""

    n: int
    theta: float


@dataclass(frozen=True)
class NearResonance:
    """eps is within lambda (in phase) of the resonance at theta = m*pi."""

    nearest_m: int
    distance_theta: float


Classification = Union[InWindow, NearResonance]


def window(n: int, lam: float, k: float, a: float, b: float) -> EpsilonWindow:
    """The n-th non-resonance window of eps values."""
    if n < 0:
        raise InvalidProblemError(f"window index must be >= 0, got {n}")
    _check_lambda(lam)
    _check_problem(k, a, b)
    lo = k * ((b - a) / ((n + 1) * math.pi - lam)) ** 2
    hi = k * ((b - a) / (n * math.pi + lam)) ** 2
    return EpsilonWindow(n=n, lo=lo, hi=hi, lam=lam, k=k, a=a, b=b)


def resonance_points(k: float, a: float, b: float, m_max: int) -> list[float]:
    """eps*_m = k*((b-a)/(m*pi))^2 for m = 1..m_max, strictly decreasing."""
    _check_problem(k, a, b)
    if m_max < 1:
        raise InvalidProblemError(f"m_max must be >= 1, got {m_max}")
    return [eps_of_theta(m * math.pi, k, a, b) for m in range(1, m_max + 1)]


def classify(eps: float, lam: float, k: float, a: float, b: float) -> Classification:
    """Place eps inside a window or report the nearest resonance."""
    _check_lambda(lam)
    _check_problem(k, a, b)
    if not eps > 0:
        raise InvalidProblemError(f"eps must be positive, got {eps}")
    theta = theta_of(eps, k, a, b)
    n = int(math.floor(theta / math.pi))
    frac = theta - n * math.pi
    if lam <= frac <= math.pi - lam:
        return InWindow(n=n, theta=theta)
    m = int(round(theta / math.pi))
    return NearResonance(nearest_m=m, distance_theta=abs(theta - m * math.pi))


def sample_sequence(lam: float, k: float, a: float, b: float,
                    n_from: int, n_to: int,
                    placement: str = "theta_midpoint",
                    fraction: float = None) -> list[tuple[int, float]]:
    """An eps_n sequence with one sample inside each window n_from..n_to.

    theta_midpoint puts theta_n = (2n+1)*pi/2, the conditioning optimum
    |sin theta| = 1. theta_fraction places theta_n = n*pi + lam + r*(pi - 2*lam)
    for the given fraction r in (0, 1), for stress tests near window edges.
    """
    _check_lambda(lam)
    _check_problem(k, a, b)
    if not 0 <= n_from <= n_to:
        raise InvalidProblemError(f"need 0 <= n_from <= n_to, got {n_from}..{n_to}")
    out = []
    for n in range(n_from, n_to + 1):
        if placement == "theta_midpoint":
            theta = (2 * n + 1) * math.pi / 2
        elif placement == "theta_fraction":
            if fraction is None or not 0.0 < fraction < 1.0:
                raise InvalidProblemError(f"fraction must lie in (0,1), got {fraction}")
            theta = n * math.pi + lam + fraction * (math.pi - 2 * lam)
        else:
            raise InvalidProblemError(f"unknown placement {placement!r}")
        out.append((n, eps_of_theta(theta, k, a, b)))
    return out
