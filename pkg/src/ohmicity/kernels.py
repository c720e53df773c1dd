"""Spectral density family and thermal bath correlation kernels.

The spectral density is J(w) = eta * w_c**(1-s) * w**s * exp(-w/w_c).
Its noise and dissipation kernels are the cosine and (negated) sine
transforms

    nu(t) = int_0^inf J(w) cos(w t) coth(beta w / 2) dw
    mu(t) = -int_0^inf J(w) sin(w t) dw

computed by adaptive Gauss-Legendre quadrature after substituting
x = w / w_c and truncating the exponential tail at x = 50.  The x -> 0
endpoint carries a power law (x**(s-1) at finite temperature, x**s at
zero temperature), which is removed exactly by a power-law substitution
on the first panel.  beta = math.inf selects the zero-temperature bath,
where the coth factor is identically 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_rule, power_law_rule

ZERO_TEMPERATURE = math.inf

X_MAX = 50.0  # exp(-50) < 2e-22 relative tail
X_SMALL = 0.01  # dedicated power-law panel on [0, 0.01] in x = w/w_c units
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SpectralDensity:
    """Exponential-cutoff spectral density with Ohmicity exponent s."""

    eta: float
    omega_c: float
    s: float
    cutoff: str = "exponential"

    def __post_init__(self):
        # eta = 0 is allowed as the explicit null-coupling limit (all
        # kernels vanish), used by the free-precession checks
        if not (self.eta >= 0 and self.omega_c > 0 and self.s > 0):
            raise ValueError(
                f"require eta >= 0 and omega_c, s > 0, got "
                f"({self.eta}, {self.omega_c}, {self.s})"
            )
        if self.cutoff != "exponential":
            raise ValueError(f"unsupported cutoff kind {self.cutoff!r}")


@dataclass(frozen=True)
class KernelGrid:
    """Noise and dissipation kernels tabulated on an ascending time grid."""

    times: np.ndarray
    nu: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        if not (len(self.times) == len(self.nu) == len(self.mu)):
            raise ValueError("times, nu, mu must have identical length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")


def _check_beta(beta):
    if not (beta > 0):
        raise ValueError(f"inverse temperature must be positive, got {beta}")


def evaluate_sd(sd, omega):
    """J(omega) for scalar or array omega >= 0."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("spectral density is defined for omega >= 0 only")
    with np.errstate(divide="ignore"):
        # w**s -> 0 as w -> 0 for s > 0; silence the 0**negative in w**(s-1)
        # style expressions numpy may form internally for array inputs.
        out = sd.eta * sd.omega_c ** (1.0 - sd.s) * omega**sd.s * np.exp(
            -omega / sd.omega_c
        )
    return out if out.ndim else float(out)


def coth_half(beta, omega):
    """coth(beta * omega / 2), series-stabilised near zero; 1 at beta = inf."""
    omega = np.asarray(omega, dtype=float)
    if math.isinf(beta):
        out = np.ones_like(omega)
        return out if out.ndim else float(out)
    u = 0.5 * beta * omega
    small = np.abs(u) < 1e-4
    safe = np.where(small, 1.0, u)
    out = np.where(small, _coth_series(u), 1.0 / np.tanh(safe))
    return out if out.ndim else float(out)


def _coth_series(u):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(u != 0.0, 1.0 / np.where(u != 0.0, u, 1.0) + u / 3.0
                        - u**3 / 45.0, np.inf)


class KernelQuadrature:
    """Frozen quadrature rule for one transform of one bath.

    The rule is a node set {w_k} with coefficients {c_k} such that the
    kernel at time t is sum_k c_k * trig(w_k * t), with trig one of cos,
    sin, or 1 - cos.  The node layout is adapted on a probe set of times
    and then reused for arbitrary (in particular dense uniform) grids,
    which keeps tabulation cost at one trig matrix per grid.
    """

    def __init__(self, sd, beta, kind, probe_times, tol=DEFAULT_TOL):
        _check_beta(beta)
        if kind == "noise":
            power = sd.s if math.isfinite(beta) else sd.s + 1.0
            g = lambda x: x**sd.s * np.exp(-x) * coth_half(beta, sd.omega_c * x)
            self.trig = "cos"
            self.prefactor = sd.eta * sd.omega_c**2
        elif kind == "dissipation":
            power = sd.s + 2.0
            g = lambda x: x**sd.s * np.exp(-x)
            self.trig = "sin"
            self.prefactor = -sd.eta * sd.omega_c**2
        elif kind == "decoherence":
            power = sd.s if math.isfinite(beta) else sd.s + 1.0
            g = lambda x: x ** (sd.s - 2.0) * np.exp(-x) * coth_half(
                beta, sd.omega_c * x
            )
            self.trig = "one_minus_cos"
            self.prefactor = 4.0 * sd.eta
        else:
            raise ValueError(f"unknown kernel kind {kind!r}")

        probe = np.atleast_1d(np.asarray(probe_times, dtype=float))
        phases = sd.omega_c * probe

        def integrand(x):
            base = g(x)
            if self.trig == "cos":
                osc = np.cos(np.multiply.outer(x, phases))
            elif self.trig == "sin":
                osc = np.sin(np.multiply.outer(x, phases))
            else:
                osc = 2.0 * np.sin(0.5 * np.multiply.outer(x, phases)) ** 2
            return base[:, None] * osc

        scale = max(abs(self.prefactor), 1.0)
        x_lo, w_lo = power_law_rule(integrand, X_SMALL, power,
                                    tol=0.5 * tol / scale)
        x_hi, w_hi = adaptive_rule(integrand, X_SMALL, X_MAX,
                                   tol=0.5 * tol / scale)
        xs = np.concatenate([x_lo, x_hi])
        ws = np.concatenate([w_lo, w_hi])
        self.omegas = sd.omega_c * xs
        self.coeffs = self.prefactor * ws * g(xs)

    def evaluate(self, times):
        """Kernel values at arbitrary times by direct summation."""
        times = np.atleast_1d(np.asarray(times, dtype=float))
        arg = np.multiply.outer(times, self.omegas)
        if self.trig == "cos":
            return np.cos(arg) @ self.coeffs
        if self.trig == "sin":
            return np.sin(arg) @ self.coeffs
        # 1 - cos(arg) as 2 sin^2(arg/2): the direct difference cancels
        # catastrophically against the large small-node coefficients
        return (2.0 * np.sin(0.5 * arg) ** 2) @ self.coeffs

    def evaluate_uniform(self, step, count):
        """Kernel on the grid {0, step, ..., (count-1)*step}.

        Uses the two-term trigonometric recurrence along the time axis, so
        the cost is O(nodes * count) multiplications with no per-element
        trig calls.
        """
        out = np.empty(count)
        if self.trig == "one_minus_cos":
            # track sin(omega t / 2) so 1 - cos is formed as 2 sin^2
            two_cos = 2.0 * np.cos(0.5 * self.omegas * step)
            prev = np.sin(-0.5 * self.omegas * step)
            cur = np.zeros_like(self.omegas)
            for j in range(count):
                out[j] = self.coeffs @ (2.0 * cur**2)
                prev, cur = cur, two_cos * cur - prev
            return out
        two_cos = 2.0 * np.cos(self.omegas * step)
        if self.trig == "sin":
            prev = np.sin(-self.omegas * step)
            cur = np.zeros_like(self.omegas)
        else:
            prev = np.cos(self.omegas * step)
            cur = np.ones_like(self.omegas)
        for j in range(count):
            out[j] = self.coeffs @ cur
            prev, cur = cur, two_cos * cur - prev
        return out


def noise_kernel(sd, beta, t, tol=DEFAULT_TOL):
    """nu(t): temperature-weighted cosine transform of J."""
    rule = KernelQuadrature(sd, beta, "noise", [abs(t)], tol=tol)
    return float(rule.evaluate([t])[0])


def dissipation_kernel(sd, t, tol=DEFAULT_TOL):
    """mu(t) = -int J(w) sin(w t) dw; independent of temperature."""
    rule = KernelQuadrature(sd, ZERO_TEMPERATURE, "dissipation", [abs(t)], tol=tol)
    return float(rule.evaluate([t])[0])


def correlation_function(sd, beta, t, tol=DEFAULT_TOL):
    """alpha_beta(t) = nu(t) + i mu(t)."""
    return complex(noise_kernel(sd, beta, t, tol=tol),
                   dissipation_kernel(sd, t, tol=tol))


def tabulate_kernels(sd, beta, times, tol=DEFAULT_TOL):
    """Pointwise nu, mu on an ascending time grid."""
    times = np.asarray(times, dtype=float)
    if len(times) > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("times must be strictly increasing")
    probe = _probe_times(times)
    nu = KernelQuadrature(sd, beta, "noise", probe, tol=tol).evaluate(times)
    mu = KernelQuadrature(sd, ZERO_TEMPERATURE, "dissipation", probe,
                          tol=tol).evaluate(times)
    return KernelGrid(times=times, nu=nu, mu=mu)


def _probe_times(times):
    times = np.atleast_1d(times)
    if len(times) <= 33:
        return times
    idx = np.unique(np.linspace(0, len(times) - 1, 33).round().astype(int))
    return times[idx]
