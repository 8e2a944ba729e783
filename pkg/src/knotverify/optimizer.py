"""Derivative-free 2D minimization: Nelder-Mead with the Lagarias coefficient
scheme, specialized to the unit square.

Iterates are clamped onto [0, 1]^2 by projection (roots on the seam of a
closed curve matter, and penalty terms would distort their basins).  All
arithmetic is plain float, so identical inputs give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ObjectiveEvaluationError

__all__ = ["SimplexConfig", "MinimizationResult", "nelder_mead"]


@dataclass(frozen=True)
class SimplexConfig:
    initial_step: float = 0.02
    f_tolerance: float = 1e-14
    x_tolerance: float = 1e-10
    max_iterations: int = 2000
    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5

    def __post_init__(self):
        for name in ("reflection", "expansion", "contraction", "shrink"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} coefficient must be positive")
        if self.expansion <= self.reflection:
            raise ValueError("expansion must exceed reflection")
        if self.contraction >= 1.0:
            raise ValueError("contraction must be below 1")


@dataclass(frozen=True)
class MinimizationResult:
    x: tuple[float, float]
    f_value: float
    iterations: int
    converged: bool


def _clamp(p: tuple[float, float]) -> tuple[float, float]:
    return (min(max(p[0], 0.0), 1.0), min(max(p[1], 0.0), 1.0))


def nelder_mead(
    objective: Callable[[float, float], float],
    start: tuple[float, float],
    config: SimplexConfig = SimplexConfig(),
) -> MinimizationResult:
    """Minimize `objective` over [0, 1]^2 from `start`.

    Convergence is declared when the simplex diameter drops below
    x_tolerance or the spread of objective values below f_tolerance.
    A non-finite objective value aborts with ObjectiveEvaluationError.
    """

    def f(p):
        v = float(objective(p[0], p[1]))
        if not math.isfinite(v):
            raise ObjectiveEvaluationError(p, v)
        return v

    step = config.initial_step
    p0 = _clamp((float(start[0]), float(start[1])))
    simplex = [p0]
    for i in range(2):
        delta = step if p0[i] + step <= 1.0 else -step
        q = list(p0)
        q[i] += delta
        simplex.append(_clamp(tuple(q)))
    values = [f(p) for p in simplex]

    rho, chi, gamma, sigma = config.reflection, config.expansion, config.contraction, config.shrink
    iterations = 0
    converged = False
    while True:
        order = sorted(range(3), key=lambda i: values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]

        diameter = max(
            math.hypot(simplex[1][0] - simplex[0][0], simplex[1][1] - simplex[0][1]),
            math.hypot(simplex[2][0] - simplex[0][0], simplex[2][1] - simplex[0][1]),
        )
        if diameter < config.x_tolerance or values[2] - values[0] < config.f_tolerance:
            converged = True
            break
        if iterations >= config.max_iterations:
            break
        iterations += 1

        best, second, worst = simplex
        cx = 0.5 * (best[0] + second[0])
        cy = 0.5 * (best[1] + second[1])
        xr = _clamp((cx + rho * (cx - worst[0]), cy + rho * (cy - worst[1])))
        fr = f(xr)

        if fr < values[0]:
            xe = _clamp((cx + rho * chi * (cx - worst[0]), cy + rho * chi * (cy - worst[1])))
            fe = f(xe)
            if fe < fr:
                simplex[2], values[2] = xe, fe
            else:
                simplex[2], values[2] = xr, fr
        elif fr < values[1]:
            simplex[2], values[2] = xr, fr
        elif fr < values[2]:
            # outside contraction
            xc = _clamp((cx + gamma * rho * (cx - worst[0]), cy + gamma * rho * (cy - worst[1])))
            fc = f(xc)
            if fc <= fr:
                simplex[2], values[2] = xc, fc
            else:
                simplex, values = _shrink(simplex, values, sigma, f)
        else:
            # inside contraction
            xc = _clamp((cx - gamma * (cx - worst[0]), cy - gamma * (cy - worst[1])))
            fc = f(xc)
            if fc < values[2]:
                simplex[2], values[2] = xc, fc
            else:
                simplex, values = _shrink(simplex, values, sigma, f)

    return MinimizationResult(x=simplex[0], f_value=values[0], iterations=iterations, converged=converged)


def _shrink(simplex, values, sigma, f):
    best = simplex[0]
    out = [best]
    vals = [values[0]]
    for p in simplex[1:]:
        q = _clamp((best[0] + sigma * (p[0] - best[0]), best[1] + sigma * (p[1] - best[1])))
        out.append(q)
        vals.append(f(q))
    return out, vals
