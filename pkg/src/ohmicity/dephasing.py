"""Exactly solvable pure-dephasing spin-boson dynamics.

The interaction commutes with the system Hamiltonian, so populations are
constant and the coherences decay as exp(-Gamma(t)) with

    Gamma(t) = 4 int_0^inf J(w) coth(beta w / 2) (1 - cos(w t)) / w**2 dw.

After the substitution x = w / w_c this is 4 * eta * int x**(s-2)
exp(-x) coth(...) (1 - cos(w_c x t)) dx, evaluated with the same adaptive
rule as the bath kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import DEFAULT_TOL, KernelQuadrature, SpectralDensity, _check_beta
from .data import Trajectory

PLUS_STATE = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)


@dataclass(frozen=True)
class DephasingConfig:
    sd: SpectralDensity
    beta: float
    rho0: np.ndarray = field(default_factory=lambda: PLUS_STATE.copy())
    t_min: float = 0.0
    t_max: float = 10.0
    n_points: int = 400

    def __post_init__(self):
        _check_beta(self.beta)
        rho0 = np.asarray(self.rho0, dtype=complex)
        if rho0.shape != (2, 2):
            raise ValueError("rho0 must be a 2x2 density matrix")
        if not np.allclose(rho0, rho0.conj().T, atol=1e-12):
            raise ValueError("rho0 must be Hermitian")
        if abs(np.trace(rho0).real - 1.0) > 1e-12:
            raise ValueError("rho0 must have unit trace")
        if np.linalg.eigvalsh(rho0).min() < -1e-12:
            raise ValueError("rho0 must be positive semidefinite")
        object.__setattr__(self, "rho0", rho0)
        if not self.t_min < self.t_max:
            raise ValueError("require t_min < t_max")
        if self.n_points < 2:
            raise ValueError("require n_points >= 2")

    def times(self):
        """Left-closed uniform grid: t_n = t_min + n * span / n_points."""
        span = self.t_max - self.t_min
        return self.t_min + np.arange(self.n_points) * (span / self.n_points)


def decoherence_function(sd, beta, t, tol=DEFAULT_TOL):
    """Gamma(t) >= 0 for the thermal exponential-cutoff family."""
    if t < 0:
        raise ValueError("decoherence function is evaluated for t >= 0")
    return float(decoherence_profile(sd, beta, [t], tol=tol)[0])


def decoherence_profile(sd, beta, times, tol=DEFAULT_TOL):
    """Gamma on an array of times, sharing one adapted quadrature rule."""
    times = np.asarray(times, dtype=float)
    probe = times if times.size <= 64 else _spread(times, 33)
    rule = KernelQuadrature(sd, beta, "decoherence", probe, tol=tol)
    return rule.evaluate(times)


def _spread(times, k):
    idx = np.unique(np.linspace(0, len(times) - 1, k).round().astype(int))
    return times[idx]


def evolve_density(config, t, tol=DEFAULT_TOL):
    """Reduced density matrix at time t: coherences scaled by exp(-Gamma)."""
    if not (config.t_min <= t <= config.t_max):
        raise ValueError(f"t={t} outside [{config.t_min}, {config.t_max}]")
    damp = np.exp(-decoherence_function(config.sd, config.beta, t, tol=tol))
    rho = config.rho0.copy()
    rho[0, 1] *= damp
    rho[1, 0] *= damp
    return rho


def sigma_x_trajectory(config, tol=DEFAULT_TOL):
    """<sigma_x(t)> = 2 Re(rho01 * exp(-Gamma(t))) on the uniform grid."""
    times = config.times()
    gamma = decoherence_profile(config.sd, config.beta, times, tol=tol)
    values = 2.0 * (config.rho0[0, 1] * np.exp(-gamma)).real
    return Trajectory(times=times, values=values)
