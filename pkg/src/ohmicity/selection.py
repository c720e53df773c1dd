"""Correlation-driven time-point selection and the uniform baseline.

The Pearson matrix is computed over time points of the training split.
Label relevance of a time point is the overall (population) variance minus
the mean of its within-class variances; redundant members of highly
correlated pairs are removed first, keeping the member more relevant to
the label.  Reduced datasets are re-featureised with the non-uniform DFT.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import CLASS_ORDER
from .fourier import nudft, position_scaling, to_features


@dataclass(frozen=True)
class CorrelationMatrix:
    entries: np.ndarray

    @property
    def n(self):
        return len(self.entries)


@dataclass(frozen=True)
class LabelRelevance:
    scores: np.ndarray


@dataclass(frozen=True)
class FeatureRanking:
    removal_order: np.ndarray  # first removed first; last entry is the survivor

    def retained(self, k):
        """The k indices kept for a budget of k time points, ascending."""
        n = len(self.removal_order)
        if not 1 <= k <= n:
            raise ValueError(f"budget {k} outside 1..{n}")
        return np.sort(self.removal_order[n - k:])


def pearson_matrix(values):
    """Pairwise Pearson correlation of time points across trajectories.

    Zero-variance time points get 0 off the diagonal and 1 on it.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 2 or len(x) < 2:
        raise ValueError("need a (trajectories x time points) matrix with "
                         "at least 2 rows")
    centered = x - x.mean(axis=0)
    norms = np.sqrt((centered**2).sum(axis=0))
    degenerate = norms == 0.0
    safe = np.where(degenerate, 1.0, norms)
    c = (centered.T @ centered) / np.outer(safe, safe)
    c[degenerate, :] = 0.0
    c[:, degenerate] = 0.0
    np.fill_diagonal(c, 1.0)
    return CorrelationMatrix(entries=c)


def label_relevance(values, labels):
    """R_j = Var_all(x_j) - mean over classes of Var_class(x_j)."""
    x = np.asarray(values, dtype=float)
    labels = np.asarray(labels)
    class_indices = [np.flatnonzero(labels == cls.index)
                     for cls in CLASS_ORDER]
    if any(len(idx) == 0 for idx in class_indices):
        raise ValueError("all three classes must be present")
    overall = x.var(axis=0)
    within = np.mean([x[idx].var(axis=0) for idx in class_indices], axis=0)
    return LabelRelevance(scores=overall - within)


def rank_features(corr, relevance):
    """Removal order from a single pass over pairs sorted by |C| descending.

    Ties between pairs break lexicographically on (i, j); within a pair the
    member with the smaller relevance is removed (tie: the larger index).
    Already-removed features are skipped when their pairs resurface.
    """
    c = corr.entries
    r = relevance.scores
    n = len(c)
    if len(r) != n:
        raise ValueError(f"dimension mismatch: C is {n}, R is {len(r)}")
    iu, ju = np.triu_indices(n, k=1)
    order = np.lexsort((ju, iu, -np.abs(c[iu, ju])))
    active = np.ones(n, dtype=bool)
    removal = []
    remaining = n
    for pair in order:
        if remaining == 1:
            break
        i, j = int(iu[pair]), int(ju[pair])
        if not (active[i] and active[j]):
            continue
        drop = j if (r[j] < r[i] or (r[j] == r[i])) else i
        active[drop] = False
        removal.append(drop)
        remaining -= 1
    # every pair is visited, so exactly one feature survives the walk
    removal.append(int(np.flatnonzero(active)[0]))
    return FeatureRanking(removal_order=np.array(removal))


def select_uniform(n, k):
    """k indices with stride floor(n / k), starting at 0."""
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    return np.arange(k) * (n // k)


def reduced_features(dataset, indices):
    """Feature arrays per split after restricting to selected time points.

    Returns {split: (features, labels)} where features come from the
    NUDFT of the restricted trajectories at affinely scaled positions.
    """
    indices = np.asarray(indices, dtype=int)
    if len(indices) == 0 or np.any(np.diff(indices) <= 0):
        raise ValueError("indices must be nonempty and ascending")
    if indices[0] < 0 or indices[-1] >= dataset.n_points:
        raise ValueError("indices out of range")
    times = dataset.times()[indices]
    positions = position_scaling(times, dataset.t_min, dataset.t_max)
    out = {}
    for split in dataset.splits:
        values = dataset.values_matrix(split)[:, indices]
        feats = np.array([to_features(nudft(row, positions))
                          for row in values])
        out[split] = (feats, dataset.labels(split))
    return out
