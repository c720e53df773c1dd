"""Shared fixtures: tiny scenario specs and synthetic datasets."""

import math

import numpy as np
import pytest

from ohmicity.data import (CLASS_ORDER, Dataset, Interval, LabeledTrajectory,
                           OhmicityClass, ScenarioSpec)


def tiny_dephasing_spec(n_train=6, n_valid=3, n_test=3, n_points=16,
                        name="tiny-pd"):
    return ScenarioSpec(
        name=name, model="dephasing",
        s_intervals={
            OhmicityClass.SUB_OHMIC: Interval(0.0, 0.5, lo_open=True),
            OhmicityClass.OHMIC: Interval(1.0, 1.0),
            OhmicityClass.SUPER_OHMIC: Interval(1.5, 4.0),
        },
        eta_range=Interval(0.25, 0.25), omega_c_range=Interval(0.5, 0.5),
        beta=math.inf, omega0=None,
        n_train=n_train, n_valid=n_valid, n_test=n_test, n_points=n_points)


def tiny_damping_spec(n_train=3, n_valid=3, n_test=3, name="tiny-ad"):
    return ScenarioSpec(
        name=name, model="damping",
        s_intervals={
            OhmicityClass.SUB_OHMIC: Interval(0.3, 1.0, hi_open=True),
            OhmicityClass.OHMIC: Interval(1.0, 1.0),
            OhmicityClass.SUPER_OHMIC: Interval(1.0, 2.0, lo_open=True),
        },
        eta_range=Interval(0.0, 0.2, lo_open=True),
        omega_c_range=Interval(0.1, 2.0),
        beta=0.1, omega0=1.0,
        n_train=n_train, n_valid=n_valid, n_test=n_test, n_points=400)


def synthetic_dataset(n_per_split=6, n_points=16, seed=0, scenario="synthetic"):
    """Balanced dataset of random trajectories, no physics involved."""
    rng = np.random.default_rng(seed)
    t_min, t_max = 0.0, 10.0
    times = t_min + np.arange(n_points) * ((t_max - t_min) / n_points)
    splits = {}
    for split in ("train", "valid", "test"):
        trajectories = []
        for i in range(n_per_split):
            label = CLASS_ORDER[i % 3]
            trajectories.append(LabeledTrajectory(
                label=label, s=(0.5, 1.0, 2.0)[label.index],
                eta=0.25, omega_c=0.5, beta=math.inf, omega0=None,
                times=times,
                values=rng.uniform(-1.0, 1.0, n_points)))
        splits[split] = trajectories
    return Dataset(scenario=scenario, model="dephasing", seed=seed,
                   sigma=0.0, t_min=t_min, t_max=t_max, n_points=n_points,
                   splits=splits)


@pytest.fixture
def tiny_pd_spec():
    return tiny_dephasing_spec()


@pytest.fixture
def fake_dataset():
    return synthetic_dataset()
