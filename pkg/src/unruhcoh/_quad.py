"""Composite Gauss-Legendre panel quadrature, vectorized over nodes.

Internal helper shared by the special-function kernel and the amplitude
oracle.  A fixed high-order rule is applied per panel; callers refine by
doubling the panel count until the total stabilizes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import AccuracyError

GL_ORDER = 16


@lru_cache(maxsize=8)
def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def panel_sum(f: Callable[[np.ndarray], np.ndarray], edges: np.ndarray,
              order: int = GL_ORDER) -> complex:
    """Integrate f over the panels defined by ``edges`` (sorted breakpoints)."""
    x, w = _gl_rule(order)
    a = edges[:-1]
    h = 0.5 * np.diff(edges)
    nodes = (a + h)[:, None] + h[:, None] * x[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return complex(np.sum((vals @ w) * h))


def refine_to_tolerance(f: Callable[[np.ndarray], np.ndarray],
                        edges: np.ndarray,
                        rel_tol: float,
                        scale_floor: float = 0.0,
                        max_doublings: int = 10,
                        order: int = GL_ORDER) -> complex:
    """Panel quadrature refined by edge-doubling until stable.

    Convergence is judged against max(|value|, scale_floor) so integrals that
    pass near zero by cancellation do not demand unattainable relative
    accuracy.  Raises AccuracyError when the budget is exhausted.
    """
    val = panel_sum(f, edges, order)
    achieved = np.inf
    for _ in range(max_doublings):
        mid = 0.5 * (edges[:-1] + edges[1:])
        edges = np.sort(np.concatenate([edges, mid]))
        new = panel_sum(f, edges, order)
        achieved = abs(new - val) / max(abs(new), scale_floor, np.finfo(float).tiny)
        val = new
        if achieved <= rel_tol:
            return val
    raise AccuracyError("panel refinement did not stabilize", achieved)


def edges_linear(a: float, b: float, n: int) -> np.ndarray:
    return np.linspace(a, b, max(int(n), 1) + 1)
