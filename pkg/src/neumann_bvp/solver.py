"""Explicit solution of eps*y'' + k*y = f(t), y'(a) = y'(b) = 0.

Away from resonance the solution has a closed integral form. Two
algebraically equal evaluations are provided: the naive form, whose
integrands scale as f/eps, and the integration-by-parts reduced form
f(t)/k plus integrals of f'/k, which is one power of 1/eps better
conditioned and is the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidProblemError, NearResonanceError
from .fnmodel import SmoothFunction
from .quadrature import CosKernel, OscIntegrand, QuadConfig, SinKernel, osc_integral
from .windows import DEFAULT_LAMBDA, NearResonance, classify

__all__ = ["ProblemSpec", "SolveContext", "SolutionProfile", "make_context",
           "evaluate_naive", "evaluate_reduced", "derivative",
           "second_derivative", "solve_grid", "NAIVE", "REDUCED"]

NAIVE = "naive"
REDUCED = "reduced"


@dataclass(frozen=True)
class ProblemSpec:
    a: float
    b: float
    k: float
    f: SmoothFunction

    def __post_init__(self):
        if not self.a < self.b:
            raise InvalidProblemError(f"need a < b, got a={self.a}, b={self.b}")
        if not self.k > 0:
            raise InvalidProblemError(f"k must be positive, got {self.k}")
        if self.f.a > self.a or self.f.b < self.b:
            raise InvalidProblemError("f's domain does not cover [a, b]")

    @classmethod
    def from_expression(cls, src: str, a: float, b: float, k: float) -> "ProblemSpec":
        return cls(a=a, b=b, k=k, f=SmoothFunction.from_expression(src, a, b))


@dataclass(frozen=True)
class SolveContext:
    """Per-(problem, eps) solve state; immutable, including cached integrals.

    i1_f   = integral over [a,b] of cos[omega*(b-s)] * f(s) ds  (no 1/eps)
    i1_fp  = integral over [a,b] of sin[omega*(b-s)] * f'(s) ds (no 1/k)
    """

    eps: float
    lam: float
    omega: float
    theta: float
    sin_theta: float
    window: object
    quad: QuadConfig
    eval_form: str
    i1_f: float
    i1_fp: float
    resonance_override: bool = False


@dataclass
class SolutionProfile:
    grid: np.ndarray
    y: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    residual: np.ndarray


def make_context(p: ProblemSpec, eps: float, lam: float = DEFAULT_LAMBDA,
                 quad: QuadConfig = QuadConfig(), eval_form: str = REDUCED,
                 allow_near_resonance: bool = False) -> SolveContext:
    """Classify eps, precompute the t-independent integrals, freeze the context."""
    if eval_form not in (NAIVE, REDUCED):
        raise ValueError(f"eval_form must be {NAIVE!r} or {REDUCED!r}")
    cls = classify(eps, lam, p.k, p.a, p.b)
    if isinstance(cls, NearResonance) and not allow_near_resonance:
        raise NearResonanceError(
            f"eps={eps} is within phase distance {cls.distance_theta:.3g} of the "
            f"resonance at m={cls.nearest_m} (lambda={lam})",
            nearest_m=cls.nearest_m, distance_theta=cls.distance_theta)
    omega = math.sqrt(p.k / eps)
    theta = omega * (p.b - p.a)
    i1_f = osc_integral(
        OscIntegrand(CosKernel, omega, p.b, p.f, 0), p.a, p.b, quad)
    i1_fp = osc_integral(
        OscIntegrand(SinKernel, omega, p.b, p.f, 1), p.a, p.b, quad)
    return SolveContext(
        eps=eps, lam=lam, omega=omega, theta=theta, sin_theta=math.sin(theta),
        window=cls, quad=quad, eval_form=eval_form, i1_f=i1_f, i1_fp=i1_fp,
        resonance_override=allow_near_resonance)


def _check_solvable(ctx: SolveContext):
    if isinstance(ctx.window, NearResonance) and not ctx.resonance_override:
        raise NearResonanceError(
            "solve context is near resonance",
            nearest_m=ctx.window.nearest_m,
            distance_theta=ctx.window.distance_theta)


def evaluate_naive(p: ProblemSpec, ctx: SolveContext, t: float) -> float:
    """Solution value by the direct formula with f/eps integrands."""
    _check_solvable(ctx)
    w = ctx.omega
    i1 = ctx.i1_f / ctx.eps
    i2 = osc_integral(OscIntegrand(SinKernel, w, t, p.f, 0),
                      p.a, t, ctx.quad) / ctx.eps
    return math.cos(w * (t - p.a)) * i1 / (w * ctx.sin_theta) + i2 / w


def evaluate_reduced(p: ProblemSpec, ctx: SolveContext, t: float) -> float:
    """Solution value by the integration-by-parts form with f'/k integrands."""
    _check_solvable(ctx)
    w = ctx.omega
    tail = osc_integral(OscIntegrand(CosKernel, w, t, p.f, 1),
                        p.a, t, ctx.quad) / p.k
    return (float(p.f.eval(t, 0)) / p.k
            + math.cos(w * (t - p.a)) / ctx.sin_theta * (ctx.i1_fp / p.k)
            - tail)


def derivative(p: ProblemSpec, ctx: SolveContext, t: float) -> float:
    """y'(t); vanishes at both endpoints by construction."""
    _check_solvable(ctx)
    w = ctx.omega
    i1 = ctx.i1_f / ctx.eps
    tail = osc_integral(OscIntegrand(CosKernel, w, t, p.f, 0),
                        p.a, t, ctx.quad) / ctx.eps
    return -math.sin(w * (t - p.a)) * i1 / ctx.sin_theta + tail


def second_derivative(p: ProblemSpec, ctx: SolveContext, t: float) -> float:
    """y''(t) = (f(t) - k*y(t))/eps, evaluated from the differentiated formula."""
    _check_solvable(ctx)
    w = ctx.omega
    i1 = ctx.i1_f / ctx.eps
    tail = osc_integral(OscIntegrand(SinKernel, w, t, p.f, 0),
                        p.a, t, ctx.quad) / ctx.eps
    return (-w * math.cos(w * (t - p.a)) * i1 / ctx.sin_theta
            - w * tail
            + float(p.f.eval(t, 0)) / ctx.eps)


def evaluate(p: ProblemSpec, ctx: SolveContext, t: float) -> float:
    form = evaluate_reduced if ctx.eval_form == REDUCED else evaluate_naive
    return form(p, ctx, t)


def solve_grid(p: ProblemSpec, ctx: SolveContext, grid) -> SolutionProfile:
    """Batch evaluation of y, y', y'' and the recorded residual eps*y''+k*y-f."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-D array")
    if np.any(np.diff(grid) < 0):
        raise ValueError("grid must be sorted ascending")
    if grid[0] < p.a or grid[-1] > p.b:
        raise ValueError("grid must lie within [a, b]")
    y = np.array([evaluate(p, ctx, t) for t in grid])
    y1 = np.array([derivative(p, ctx, t) for t in grid])
    y2 = np.array([second_derivative(p, ctx, t) for t in grid])
    fvals = np.asarray(p.f.eval(grid, 0), dtype=float)
    residual = ctx.eps * y2 + p.k * y - fvals
    return SolutionProfile(grid=grid, y=y, y1=y1, y2=y2, residual=residual)
