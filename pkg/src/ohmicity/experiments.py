"""Experiment orchestration: featureisation, training runs, and sweeps.

These helpers sit between the library modules and the command-line
front end so that the reproduction experiments can also be driven
directly from tests.  Every run is deterministic given (preset, seed,
sigma, iterations); generated clean datasets can be cached on disk and
re-noised per sweep point.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import network
from .data import inject_noise, load_dataset, save_dataset, scenario_presets
from .fourier import trajectory_features
from .generate import generate_preset
from .selection import (label_relevance, pearson_matrix, rank_features,
                        reduced_features, select_uniform)

HIDDEN_DIMS = (250, 80)
N_CLASSES = 3

# full-scale iteration defaults per experiment
DEFAULT_ITERATIONS = {
    "pd-separated": 500,
    "pd-adjacent": 5000,
    "pd-varying": 20_000,
    "ad-default": 10_000,
    "noise-pd": 1000,
    "noise-ad": 10_000,
    "featsel": 10_000,
}


def featureize(dataset, standardize=False):
    """{split: (feature matrix, integer labels)} via the full-grid DFT.

    With standardize=True every feature is z-scored using mean and
    standard deviation computed on the training split only.
    """
    out = {}
    for split in dataset.splits:
        feats = np.array([trajectory_features(traj.values)
                          for traj in dataset.splits[split]])
        out[split] = (feats, dataset.labels(split))
    if standardize:
        mean = out["train"][0].mean(axis=0)
        std = out["train"][0].std(axis=0)
        std = np.where(std == 0.0, 1.0, std)
        out = {split: ((x - mean) / std, y) for split, (x, y) in out.items()}
    return out


@dataclass
class RunResult:
    model: network.MlpModel
    report: network.TrainReport
    train_accuracy: float
    valid_accuracy: float
    test_accuracy: float


def train_classifier(features, iterations, seed, lr=1e-4, report_every=100,
                     log=None):
    """Train the standard architecture on featureised splits."""
    x_train, y_train = features["train"]
    dims = (x_train.shape[1], *HIDDEN_DIMS, N_CLASSES)
    model = network.init_model(dims, seed)
    report = network.train(
        model, x_train, y_train, iterations, lr=lr,
        valid_features=features["valid"][0], valid_labels=features["valid"][1],
        report_every=report_every, log=log)
    report.test_accuracy = network.accuracy(model, *features["test"])
    return RunResult(
        model=model, report=report,
        train_accuracy=report.train_accuracy[-1],
        valid_accuracy=report.valid_accuracy[-1] if report.valid_accuracy
        else float("nan"),
        test_accuracy=report.test_accuracy)


def cache_dir():
    return Path(os.environ.get(
        "OHMICITY_CACHE", Path.home() / ".cache" / "ohmicity"))


def load_or_generate(preset, seed, jobs=1, cache=True, progress=None):
    """Clean dataset for a preset, cached on disk keyed by (preset, seed)."""
    path = cache_dir() / f"{preset}-seed{seed}"
    if cache and (path / "meta.txt").exists():
        return load_dataset(path)
    dataset = generate_preset(preset, seed, jobs=jobs, progress=progress)
    if cache:
        save_dataset(dataset, path)
    return dataset


def run_classification(preset, seed, iterations, sigma=0.0, jobs=1,
                       lr=1e-4, log=None, cache=True):
    """Generate (or reuse) the dataset, optionally add noise, train, score."""
    dataset = load_or_generate(preset, seed, jobs=jobs, cache=cache)
    noisy = inject_noise(dataset, sigma, seed)
    features = featureize(noisy)
    return train_classifier(features, iterations, seed, lr=lr, log=log)


def sweep_noise(preset, seed, sigmas, iterations, jobs=1, lr=1e-4, log=None,
                cache=True):
    """(sigma, train, test) accuracy rows, ascending in sigma.

    The clean dataset is generated once; each sweep point re-noises all
    three splits with independent, sigma-indexed streams and trains a
    fresh model.
    """
    dataset = load_or_generate(preset, seed, jobs=jobs, cache=cache)
    rows = []
    for sigma in sorted(sigmas):
        noisy = inject_noise(dataset, sigma, seed)
        features = featureize(noisy)
        result = train_classifier(features, iterations, seed, lr=lr, log=log)
        rows.append((sigma, result.train_accuracy, result.test_accuracy))
    return rows


def sweep_interval(seed, iterations, ks=range(10), jobs=1, lr=1e-4,
                   log=None, cache=True):
    """(interval length, train, test) rows over the pd-varying presets."""
    rows = []
    for k in ks:
        result = run_classification(f"pd-varying-{k}", seed, iterations,
                                    jobs=jobs, lr=lr, log=log, cache=cache)
        rows.append((0.2 * k, result.train_accuracy, result.test_accuracy))
    return rows


def correlation_ranking(dataset):
    """Feature ranking and relevance scores from the training split."""
    train_values = dataset.values_matrix("train")
    corr = pearson_matrix(train_values)
    relevance = label_relevance(train_values, dataset.labels("train"))
    return rank_features(corr, relevance), relevance


def ranking_table(dataset):
    """(rank, time_index, time_value, relevance) rows, most retained first."""
    ranking, relevance = correlation_ranking(dataset)
    times = dataset.times()
    rows = []
    for rank, idx in enumerate(ranking.removal_order[::-1], start=1):
        rows.append((rank, int(idx), float(times[idx]),
                     float(relevance.scores[idx])))
    return rows


def featsel_curve(preset, seed, points, iterations, methods=("correlation",
                                                             "uniform"),
                  jobs=1, lr=1e-4, sigma=0.0, log=None, cache=True):
    """(k, method, test accuracy) rows for reduced-time-point training."""
    dataset = load_or_generate(preset, seed, jobs=jobs, cache=cache)
    dataset = inject_noise(dataset, sigma, seed)
    ranking = None
    if "correlation" in methods:
        ranking, _ = correlation_ranking(dataset)
    rows = []
    for k in points:
        for method in methods:
            if method == "correlation":
                indices = ranking.retained(k)
            elif method == "uniform":
                indices = select_uniform(dataset.n_points, k)
            else:
                raise ValueError(f"unknown selection method {method!r}")
            features = reduced_features(dataset, indices)
            result = train_classifier(features, iterations, seed, lr=lr,
                                      log=log)
            rows.append((k, method, result.test_accuracy))
    return rows


def preset_names():
    return sorted(scenario_presets())
