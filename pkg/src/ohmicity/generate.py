"""Dataset generation: parameter sampling and trajectory synthesis.

Each trajectory owns an RNG stream derived from (seed, split, index), so
regeneration is bit-identical regardless of evaluation order and the work
can be spread over worker processes without changing the output.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import damping, dephasing
from .data import (CLASS_ORDER, SPLIT_NAMES, Dataset, LabeledTrajectory,
                   ScenarioSpec, scenario_presets)
from .kernels import SpectralDensity


def sample_parameters(spec, ohmicity_class, rng):
    """Draw (s, eta, omega_c) for one trajectory of the given class."""
    s = spec.s_intervals[ohmicity_class].sample(rng)
    eta = spec.eta_range.sample(rng)
    omega_c = spec.omega_c_range.sample(rng)
    return s, eta, omega_c


def _make_trajectory(spec, split_id, index, seed):
    rng = np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(split_id, index)))
    label = CLASS_ORDER[index % len(CLASS_ORDER)]
    s, eta, omega_c = sample_parameters(spec, label, rng)
    sd = SpectralDensity(eta=eta, omega_c=omega_c, s=s)
    if spec.model == "dephasing":
        config = dephasing.DephasingConfig(
            sd=sd, beta=spec.beta, t_min=spec.t_min, t_max=spec.t_max,
            n_points=spec.n_points)
        traj = dephasing.sigma_x_trajectory(config)
    else:
        config = damping.DampingConfig(
            sd=sd, beta=spec.beta, omega0=spec.omega0, t_min=spec.t_min,
            t_max=spec.t_max, n_points=spec.n_points)
        traj = damping.sigma_x_trajectory(config)
    return LabeledTrajectory(
        label=label, s=s, eta=eta, omega_c=omega_c, beta=spec.beta,
        omega0=spec.omega0, times=traj.times, values=traj.values)


def _split_jobs(spec, seed):
    for split_id, (split, size) in enumerate(zip(SPLIT_NAMES,
                                                 spec.split_sizes())):
        for index in range(size):
            yield split, split_id, index, seed


def generate_dataset(spec, seed, jobs=1, progress=None):
    """Balanced labeled dataset for a scenario; deterministic per seed."""
    splits = {split: [None] * size
              for split, size in zip(SPLIT_NAMES, spec.split_sizes())}
    work = list(_split_jobs(spec, seed))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_worker, [(spec, j) for j in work],
                               chunksize=16)
            for (split, _, index, _), traj in zip(work, results):
                splits[split][index] = traj
                if progress:
                    progress()
    else:
        for split, split_id, index, sd_seed in work:
            splits[split][index] = _make_trajectory(spec, split_id, index,
                                                    sd_seed)
            if progress:
                progress()
    return Dataset(
        scenario=spec.name, model=spec.model, seed=seed, sigma=0.0,
        t_min=spec.t_min, t_max=spec.t_max, n_points=spec.n_points,
        splits=splits)


def _worker(arg):
    spec, (split, split_id, index, seed) = arg
    return _make_trajectory(spec, split_id, index, seed)


def generate_preset(name, seed, jobs=1, progress=None):
    presets = scenario_presets()
    if name not in presets:
        raise KeyError(
            f"unknown preset {name!r}; valid presets: "
            + ", ".join(sorted(presets)))
    return generate_dataset(presets[name], seed, jobs=jobs, progress=progress)
