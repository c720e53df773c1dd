"""Adaptive Gauss-Legendre quadrature for smooth and power-law-endpoint integrands.

Integrands are evaluated for whole arrays of output points at once: the
callback maps an array of abscissae with shape (n,) to an array of shape
(n,) or (n, T), and error control uses the max-norm over the trailing
axis.  Besides plain integration the module can freeze the accepted
node/weight rule, so that a transform kernel adapted once on a probe set
of times can be re-applied to dense time grids at matrix-product cost.
"""

from __future__ import annotations

import numpy as np

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class QuadratureError(RuntimeError):
    """Raised when panel bisection fails to reach the requested tolerance."""


def _panel_rule(a, b):
    x = 0.5 * (a + b) + 0.5 * (b - a) * _GL_NODES
    w = 0.5 * (b - a) * _GL_WEIGHTS
    return x, w


def _panel_integral(f, a, b):
    x, w = _panel_rule(a, b)
    vals = np.asarray(f(x))
    if vals.ndim == 1:
        return w @ vals
    return w @ vals


def adaptive_rule(f, a, b, tol=1e-10, max_depth=40):
    """Bisected 16-node Gauss-Legendre rule adapted to f on [a, b].

    Returns (nodes, weights) of all accepted panels.  A panel is accepted
    when its one-panel estimate agrees with the sum over its two halves to
    within the share of the absolute tolerance proportional to panel width.
    """
    if not b > a:
        raise ValueError(f"empty integration interval [{a}, {b}]")
    width = b - a
    accepted = []
    stack = [(a, b, _panel_integral(f, a, b), 0)]
    while stack:
        lo, hi, coarse, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel_integral(f, lo, mid)
        right = _panel_integral(f, mid, hi)
        err = np.max(np.abs((left + right) - coarse))
        if err <= tol * (hi - lo) / width or err <= 1e-3 * tol:
            accepted.append((lo, mid))
            accepted.append((mid, hi))
        elif depth >= max_depth:
            raise QuadratureError(
                f"no convergence on [{lo}, {hi}] at depth {depth} (err={err:.3e})"
            )
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    nodes = []
    weights = []
    for lo, hi in sorted(accepted):
        x, w = _panel_rule(lo, hi)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def adaptive_gauss(f, a, b, tol=1e-10, max_depth=40):
    """Integral of f over [a, b] to absolute tolerance tol."""
    x, w = adaptive_rule(f, a, b, tol=tol, max_depth=max_depth)
    vals = np.asarray(f(x))
    return w @ vals


def power_law_rule(f, b, exponent, tol=1e-10, max_depth=40):
    """Rule for [0, b] where f(x) ~ x**(exponent-1) * smooth(x) near 0.

    Substituting x = b * u**(1/exponent) removes the endpoint power law;
    the rule is adapted in u and returned in x space, with the Jacobian
    folded into the weights.  Nodes are clipped away from exact zero so
    integrands with a genuine x**(s-1) pole stay finite.
    """
    if exponent <= 0:
        raise ValueError("power-law exponent must be positive")
    s = exponent
    tiny = np.finfo(float).tiny

    def to_x(u):
        return np.maximum(b * u ** (1.0 / s), tiny)

    def g(u):
        x = to_x(u)
        vals = np.asarray(f(x))
        scale = (b**s / s) * x ** (1.0 - s)
        if vals.ndim == 1:
            return scale * vals
        return scale[:, None] * vals

    u, wu = adaptive_rule(g, 0.0, 1.0, tol=tol, max_depth=max_depth)
    x = to_x(u)
    w = wu * (b**s / s) * x ** (1.0 - s)
    return x, w


def power_law_gauss(f, b, exponent, tol=1e-10, max_depth=40):
    """Integral of f over [0, b] with a power-law endpoint at 0."""
    x, w = power_law_rule(f, b, exponent, tol=tol, max_depth=max_depth)
    vals = np.asarray(f(x))
    return w @ vals
