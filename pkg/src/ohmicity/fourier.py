"""Discrete and non-uniform discrete Fourier features.

Coefficients are X_k = sum_n x_n exp(-2 pi i k p_n) with p_n = n / N on a
uniform grid and arbitrary positions in [0, 1) otherwise.  Direct O(N^2)
summation is used throughout: the non-uniform case needs it anyway and
N = 400 keeps the cost negligible.  The classifier input is the block
layout [all real parts | all imaginary parts].
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=8)
def _dft_matrix(size):
    n = np.arange(size)
    # phases formed as k * (n / size), matching the non-uniform transform
    # bit-for-bit on the canonical uniform positions
    return np.exp(-2j * np.pi * np.outer(n, n / size))


def dft(samples):
    """X_k = sum_n x_n exp(-2 pi i k n / N), k = 0..N-1."""
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("samples must be a nonempty 1-D array")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples must be finite")
    return _dft_matrix(x.size) @ x.astype(complex)


def idft(coeffs):
    """Inverse transform, (1/N) sum_k X_k exp(+2 pi i k n / N)."""
    X = np.asarray(coeffs, dtype=complex)
    n = np.arange(X.size)
    return np.exp(2j * np.pi / X.size * np.outer(n, n)) @ X / X.size


def nudft(samples, positions):
    """X_k = sum_n x_n exp(-2 pi i k p_n) for positions p_n in [0, 1)."""
    x = np.asarray(samples, dtype=float)
    p = np.asarray(positions, dtype=float)
    if x.shape != p.shape or x.ndim != 1 or x.size < 1:
        raise ValueError("samples and positions must be 1-D of equal length")
    if np.any(p < 0.0) or np.any(p >= 1.0):
        raise ValueError("positions must lie in [0, 1)")
    if np.any(np.diff(p) <= 0.0):
        raise ValueError("positions must be strictly increasing")
    k = np.arange(x.size)
    return np.exp(-2j * np.pi * np.outer(k, p)) @ x.astype(complex)


def to_features(coeffs):
    """Block layout [Re X_0 .. Re X_{M-1} | Im X_0 .. Im X_{M-1}]."""
    X = np.asarray(coeffs, dtype=complex)
    if X.ndim != 1 or X.size < 1:
        raise ValueError("coefficients must be a nonempty 1-D array")
    return np.concatenate([X.real, X.imag])


def position_scaling(selected_times, t_min, t_max):
    """Affine map t -> (t - t_min) / (t_max - t_min) onto [0, 1).

    On the full left-closed grid t_n = t_min + n (t_max - t_min) / N this
    yields exactly p_n = n / N.
    """
    t = np.asarray(selected_times, dtype=float)
    if np.any(t < t_min) or np.any(t >= t_max):
        raise ValueError(f"times must lie in [{t_min}, {t_max})")
    return (t - t_min) / (t_max - t_min)


def trajectory_features(values):
    """Full-pipeline features: DFT then the block real/imag layout."""
    return to_features(dft(values))
