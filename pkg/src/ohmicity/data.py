"""Labeled trajectory datasets: class labels, scenario presets, noise, I/O.

A dataset holds three balanced splits (train / valid / test) of labeled
observable trajectories.  Trajectories are stored on disk as CSV, one row
per trajectory (label, generating parameters, then the N sampled values at
17 significant digits), with a key=value sidecar carrying the scenario
metadata, so files round-trip losslessly and are language neutral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

import numpy as np

OPEN_ENDPOINT_MARGIN = 1e-6

SPLIT_NAMES = ("train", "valid", "test")

FORMAT_VERSION = 1


class OhmicityClass(Enum):
    SUB_OHMIC = "sub"
    OHMIC = "ohmic"
    SUPER_OHMIC = "super"

    @classmethod
    def from_s(cls, s):
        if s < 1.0:
            return cls.SUB_OHMIC
        if s == 1.0:
            return cls.OHMIC
        return cls.SUPER_OHMIC

    @property
    def index(self):
        return CLASS_ORDER.index(self)


CLASS_ORDER = (OhmicityClass.SUB_OHMIC, OhmicityClass.OHMIC,
               OhmicityClass.SUPER_OHMIC)


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled observable expectation values."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.times) != len(self.values):
            raise ValueError("times and values must share length")


@dataclass(frozen=True)
class Interval:
    """Sampling interval with open/closed endpoints.

    Open endpoints are shrunk by a fixed margin before uniform sampling,
    which keeps s away from the ill-defined value 0 and from the class
    boundary at s = 1.
    """

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if self.lo > self.hi or (self.lo == self.hi and
                                 (self.lo_open or self.hi_open)):
            raise ValueError(f"empty interval {self}")

    def sample(self, rng):
        lo = self.lo + (OPEN_ENDPOINT_MARGIN if self.lo_open else 0.0)
        hi = self.hi - (OPEN_ENDPOINT_MARGIN if self.hi_open else 0.0)
        if lo == hi:
            return lo
        return rng.uniform(lo, hi)


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    model: str  # "dephasing" | "damping"
    s_intervals: dict  # OhmicityClass -> Interval
    eta_range: Interval
    omega_c_range: Interval
    beta: float
    omega0: float | None
    n_train: int
    n_valid: int
    n_test: int
    t_min: float = 0.0
    t_max: float = 10.0
    n_points: int = 400

    def __post_init__(self):
        if self.model not in ("dephasing", "damping"):
            raise ValueError(f"unknown model {self.model!r}")
        for split, n in zip(SPLIT_NAMES, self.split_sizes()):
            if n <= 0 or n % len(CLASS_ORDER):
                raise ValueError(
                    f"{split} size {n} not divisible by {len(CLASS_ORDER)}"
                )
        for cls in CLASS_ORDER:
            if cls not in self.s_intervals:
                raise ValueError(f"missing s interval for {cls}")
        sub = self.s_intervals[OhmicityClass.SUB_OHMIC]
        sup = self.s_intervals[OhmicityClass.SUPER_OHMIC]
        ohm = self.s_intervals[OhmicityClass.OHMIC]
        if sub.hi > 1.0 or sup.lo < 1.0 or (ohm.lo, ohm.hi) != (1.0, 1.0):
            raise ValueError("s intervals inconsistent with the class map")

    def split_sizes(self):
        return (self.n_train, self.n_valid, self.n_test)


@dataclass(frozen=True)
class LabeledTrajectory:
    label: OhmicityClass
    s: float
    eta: float
    omega_c: float
    beta: float
    omega0: float | None
    times: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class Dataset:
    scenario: str
    model: str
    seed: int
    sigma: float
    t_min: float
    t_max: float
    n_points: int
    splits: dict = field(default_factory=dict)  # name -> list[LabeledTrajectory]

    def values_matrix(self, split):
        return np.array([traj.values for traj in self.splits[split]])

    def labels(self, split):
        return np.array([traj.label.index for traj in self.splits[split]])

    def times(self):
        any_split = next(iter(self.splits.values()))
        return any_split[0].times


def scenario_presets():
    """Named experiment scenarios covering all studied configurations."""
    presets = {}
    pd_sizes = dict(n_train=4800, n_valid=2400, n_test=2400)
    fixed = dict(eta_range=Interval(0.25, 0.25),
                 omega_c_range=Interval(0.5, 0.5))
    presets["pd-separated"] = ScenarioSpec(
        name="pd-separated", model="dephasing",
        s_intervals={
            OhmicityClass.SUB_OHMIC: Interval(0.0, 0.5, lo_open=True),
            OhmicityClass.OHMIC: Interval(1.0, 1.0),
            OhmicityClass.SUPER_OHMIC: Interval(1.5, 4.0),
        },
        beta=math.inf, omega0=None, **fixed, **pd_sizes)
    adjacent = {
        OhmicityClass.SUB_OHMIC: Interval(0.0, 1.0, lo_open=True, hi_open=True),
        OhmicityClass.OHMIC: Interval(1.0, 1.0),
        OhmicityClass.SUPER_OHMIC: Interval(1.0, 4.0, lo_open=True),
    }
    presets["pd-adjacent"] = ScenarioSpec(
        name="pd-adjacent", model="dephasing", s_intervals=adjacent,
        beta=math.inf, omega0=None, **fixed, **pd_sizes)
    for k in range(10):
        hi = 0.25 + 0.2 * k
        presets[f"pd-varying-{k}"] = ScenarioSpec(
            name=f"pd-varying-{k}", model="dephasing", s_intervals=adjacent,
            eta_range=Interval(0.25, hi), omega_c_range=Interval(0.25, hi),
            beta=math.inf, omega0=None, **pd_sizes)
    presets["ad-default"] = ScenarioSpec(
        name="ad-default", model="damping",
        s_intervals={
            OhmicityClass.SUB_OHMIC: Interval(0.3, 1.0, hi_open=True),
            OhmicityClass.OHMIC: Interval(1.0, 1.0),
            OhmicityClass.SUPER_OHMIC: Interval(1.0, 2.0, lo_open=True),
        },
        eta_range=Interval(0.0, 0.2, lo_open=True),
        omega_c_range=Interval(0.1, 2.0),
        beta=0.1, omega0=1.0, n_train=1500, n_valid=300, n_test=300)
    return presets


def inject_noise(dataset, sigma, seed):
    """Additive zero-mean Gaussian noise on every time-domain value.

    Independent draws per split and trajectory; sigma = 0 returns the
    dataset unchanged (same trajectory objects).
    """
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if sigma == 0:
        return dataset
    # fold sigma's bit pattern into the entropy so each sweep point draws
    # an independent noise stream from the same base seed
    sigma_bits = int(np.float64(sigma).view(np.uint64))
    new_splits = {}
    for split_id, split in enumerate(SPLIT_NAMES):
        noisy = []
        for idx, traj in enumerate(dataset.splits[split]):
            rng = np.random.default_rng(
                np.random.SeedSequence([seed, sigma_bits],
                                       spawn_key=(97, split_id, idx)))
            noisy.append(replace(
                traj, values=traj.values + rng.normal(0.0, sigma,
                                                      len(traj.values))))
        new_splits[split] = noisy
    return replace(dataset, sigma=sigma, splits=new_splits)


def _fmt(x):
    if x is None:
        return "nan"
    return f"{x:.17g}"


def save_dataset(dataset, path):
    """Write train/valid/test CSVs plus a key=value metadata sidecar."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    meta = [
        f"format_version={FORMAT_VERSION}",
        f"scenario={dataset.scenario}",
        f"model={dataset.model}",
        f"seed={dataset.seed}",
        f"sigma={_fmt(dataset.sigma)}",
        f"t_min={_fmt(dataset.t_min)}",
        f"t_max={_fmt(dataset.t_max)}",
        f"n_points={dataset.n_points}",
    ]
    (path / "meta.txt").write_text("\n".join(meta) + "\n")
    for split in SPLIT_NAMES:
        lines = []
        for traj in dataset.splits[split]:
            fields = [traj.label.value, _fmt(traj.s), _fmt(traj.eta),
                      _fmt(traj.omega_c), _fmt(traj.beta), _fmt(traj.omega0)]
            fields.extend(_fmt(v) for v in traj.values)
            lines.append(",".join(fields))
        (path / f"{split}.csv").write_text("\n".join(lines) + "\n")


def load_dataset(path):
    path = Path(path)
    meta = {}
    for line in (path / "meta.txt").read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        meta[key] = value
    if int(meta.get("format_version", -1)) != FORMAT_VERSION:
        raise ValueError(
            f"unsupported dataset format version {meta.get('format_version')}"
        )
    n_points = int(meta["n_points"])
    t_min = float(meta["t_min"])
    t_max = float(meta["t_max"])
    times = t_min + np.arange(n_points) * ((t_max - t_min) / n_points)
    splits = {}
    for split in SPLIT_NAMES:
        trajectories = []
        text = (path / f"{split}.csv").read_text()
        for row, line in enumerate(text.splitlines()):
            parts = line.split(",")
            if len(parts) != 6 + n_points:
                raise ValueError(
                    f"{split}.csv row {row}: expected {6 + n_points} fields, "
                    f"got {len(parts)}"
                )
            label = OhmicityClass(parts[0])
            s, eta, omega_c, beta, omega0 = (float(p) for p in parts[1:6])
            trajectories.append(LabeledTrajectory(
                label=label, s=s, eta=eta, omega_c=omega_c, beta=beta,
                omega0=None if math.isnan(omega0) else omega0,
                times=times,
                values=np.array([float(p) for p in parts[6:]])))
        splits[split] = trajectories
    return Dataset(
        scenario=meta["scenario"], model=meta["model"], seed=int(meta["seed"]),
        sigma=float(meta["sigma"]), t_min=t_min, t_max=t_max,
        n_points=n_points, splits=splits)
