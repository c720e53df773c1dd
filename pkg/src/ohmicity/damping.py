"""Second-order time-convolutionless amplitude-damping dynamics.

The Bloch vector obeys d<sigma>/dt = A(t) <sigma> + b(t) with

    A(t) = [[0,               -w0,      0      ],
            [w0 + a_yx(t),    a_zz(t),  0      ],
            [0,               0,        a_zz(t)]]
    b(t) = (0, 0, b_z(t))

and running integrals a_yx = int nu sin(w0 s), a_zz = -int nu cos(w0 s),
b_z = int mu sin(w0 s).  Kernels are tabulated once on a fine uniform
grid (step h/2 relative to the RK4 step h), the coefficients follow by
cumulative trapezoids, and the ODE is integrated with fixed-step
classical RK4 reading half-step coefficients exactly from the table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .data import Trajectory
from .kernels import (DEFAULT_TOL, KernelQuadrature, SpectralDensity,
                      _check_beta)

DEFAULT_N_FINE = 8001


@dataclass(frozen=True)
class DampingConfig:
    sd: SpectralDensity
    beta: float
    omega0: float
    bloch0: tuple = (1.0, 0.0, 0.0)
    t_min: float = 0.0
    t_max: float = 10.0
    n_points: int = 400
    n_fine: int = DEFAULT_N_FINE

    def __post_init__(self):
        _check_beta(self.beta)
        if self.t_min != 0.0:
            raise ValueError("coefficient integrals start at t = 0; "
                             "t_min must be 0")
        if not self.t_max > 0:
            raise ValueError("require t_max > 0")
        if self.n_points < 2:
            raise ValueError("require n_points >= 2")
        if self.n_fine < 3 or self.n_fine % 2 == 0:
            raise ValueError("n_fine must be odd (>= 3) so RK4 steps land "
                             "on table entries")
        if np.linalg.norm(self.bloch0) > 1 + 1e-12:
            raise ValueError("bloch0 must lie inside the Bloch sphere")

    def fine_grid(self):
        return np.linspace(0.0, self.t_max, self.n_fine)

    def times(self):
        span = self.t_max - self.t_min
        return self.t_min + np.arange(self.n_points) * (span / self.n_points)


@dataclass(frozen=True)
class CoefficientTable:
    times: np.ndarray
    a_yx: np.ndarray
    a_zz: np.ndarray
    b_z: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        if not (len(self.a_yx) == len(self.a_zz) == len(self.b_z) == n):
            raise ValueError("coefficient arrays must share the grid length")


def coefficient_table(sd, beta, omega0, fine_grid, tol=DEFAULT_TOL):
    """Running integrals of the kernels against sin/cos(w0 s)."""
    fine_grid = np.asarray(fine_grid, dtype=float)
    if fine_grid[0] != 0.0:
        raise ValueError("fine grid must start at 0")
    steps = np.diff(fine_grid)
    if len(steps) and not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ValueError("fine grid must be uniform")
    h = steps[0] if len(steps) else 0.0
    probe = _probe(fine_grid)
    nu_rule = KernelQuadrature(sd, beta, "noise", probe, tol=tol)
    mu_rule = KernelQuadrature(sd, beta, "dissipation", probe, tol=tol)
    n = len(fine_grid)
    nu = nu_rule.evaluate_uniform(h, n) if h else nu_rule.evaluate(fine_grid)
    mu = mu_rule.evaluate_uniform(h, n) if h else mu_rule.evaluate(fine_grid)
    sin_w0 = np.sin(omega0 * fine_grid)
    cos_w0 = np.cos(omega0 * fine_grid)
    a_yx = cumulative_trapezoid(nu * sin_w0, fine_grid, initial=0.0)
    a_zz = -cumulative_trapezoid(nu * cos_w0, fine_grid, initial=0.0)
    b_z = cumulative_trapezoid(mu * sin_w0, fine_grid, initial=0.0)
    return CoefficientTable(times=fine_grid, a_yx=a_yx, a_zz=a_zz, b_z=b_z)


def _probe(times):
    if len(times) <= 33:
        return times
    idx = np.unique(np.linspace(0, len(times) - 1, 33).round().astype(int))
    return times[idx]


def evolve_bloch(config, table=None, tol=DEFAULT_TOL):
    """Bloch-vector series on the RK4 grid (every second fine-grid time)."""
    fine = config.fine_grid()
    if table is None:
        table = coefficient_table(config.sd, config.beta, config.omega0,
                                  fine, tol=tol)
    if len(table.times) != len(fine) or table.times[-1] < config.t_max:
        raise ValueError("coefficient table does not cover the time window "
                         "at half-step resolution")
    h = 2.0 * (fine[1] - fine[0])
    n_steps = (config.n_fine - 1) // 2
    w0 = config.omega0
    a_yx = table.a_yx
    a_zz = table.a_zz
    b_z = table.b_z
    out = np.empty((n_steps + 1, 3))
    x, y, z = (float(v) for v in config.bloch0)
    out[0] = (x, y, z)

    def deriv(i, x, y, z):
        # i indexes the fine (half-step) grid
        return (-w0 * y,
                (w0 + a_yx[i]) * x + a_zz[i] * y,
                a_zz[i] * z + b_z[i])

    for step in range(n_steps):
        i0 = 2 * step
        k1 = deriv(i0, x, y, z)
        k2 = deriv(i0 + 1, x + 0.5 * h * k1[0], y + 0.5 * h * k1[1],
                   z + 0.5 * h * k1[2])
        k3 = deriv(i0 + 1, x + 0.5 * h * k2[0], y + 0.5 * h * k2[1],
                   z + 0.5 * h * k2[2])
        k4 = deriv(i0 + 2, x + h * k3[0], y + h * k3[1], z + h * k3[2])
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        z += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        out[step + 1] = (x, y, z)
    times = fine[::2]
    return times, out


def sigma_x_trajectory(config, table=None, tol=DEFAULT_TOL,
                       bound_eps=1e-6):
    """<sigma_x> component downsampled to the left-closed uniform grid."""
    rk_times, bloch = evolve_bloch(config, table=table, tol=tol)
    sample_times = config.times()
    step = rk_times[1] - rk_times[0]
    idx = np.rint(sample_times / step).astype(int)
    if not np.allclose(idx * step, sample_times, rtol=0.0, atol=1e-9):
        raise ValueError("sample grid does not align with the RK4 grid; "
                         "choose n_fine so (t_max / n_points) is a multiple "
                         "of the RK4 step")
    values = bloch[idx, 0]
    if np.max(np.abs(values)) > 1.0 + bound_eps:
        raise RuntimeError(
            f"TCL2 trajectory left [-1, 1] by more than {bound_eps:g} "
            f"(max |<sigma_x>| = {np.max(np.abs(values)):.6f}); "
            f"sd={config.sd}, beta={config.beta}"
        )
    return Trajectory(times=sample_times, values=values)
