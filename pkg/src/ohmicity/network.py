"""Dense feed-forward classifier trained from scratch.

Sigmoid hidden layers, softmax output, categorical cross-entropy, and
full-batch Adam.  Forward, backward, and the update rule are written out
explicitly in numpy; the output-layer delta uses the combined
softmax/cross-entropy form (prediction - target).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

DEFAULT_DIMS = (800, 250, 80, 3)
LOG_CLAMP = 1e-15
MODEL_FORMAT_VERSION = 1


@dataclass
class MlpModel:
    dims: tuple
    weights: list
    biases: list


@dataclass
class AdamState:
    lr: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    step: int = 0
    m_w: list = field(default_factory=list)
    v_w: list = field(default_factory=list)
    m_b: list = field(default_factory=list)
    v_b: list = field(default_factory=list)

    @classmethod
    def for_model(cls, model, lr=1e-4):
        state = cls(lr=lr)
        state.m_w = [np.zeros_like(w) for w in model.weights]
        state.v_w = [np.zeros_like(w) for w in model.weights]
        state.m_b = [np.zeros_like(b) for b in model.biases]
        state.v_b = [np.zeros_like(b) for b in model.biases]
        return state


@dataclass
class TrainReport:
    iterations: list = field(default_factory=list)
    train_loss: list = field(default_factory=list)
    train_accuracy: list = field(default_factory=list)
    valid_iterations: list = field(default_factory=list)
    valid_accuracy: list = field(default_factory=list)
    test_accuracy: float | None = None


def init_model(dims, seed):
    """Uniform +-sqrt(6 / (fan_in + fan_out)) weights, zero biases."""
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2 or any(d < 1 for d in dims):
        raise ValueError(f"invalid layer dims {dims}")
    rng = np.random.default_rng(seed)
    weights = []
    biases = []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return MlpModel(dims=dims, weights=weights, biases=biases)


def sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def softmax(z):
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _forward_pass(model, batch):
    """Returns the list of layer activations, input first, probs last."""
    x = np.atleast_2d(np.asarray(batch, dtype=float))
    if x.shape[1] != model.dims[0]:
        raise ValueError(
            f"feature length {x.shape[1]} does not match input layer "
            f"{model.dims[0]}")
    activations = [x]
    last = len(model.weights) - 1
    for layer, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = activations[-1] @ w + b
        activations.append(softmax(z) if layer == last else sigmoid(z))
    return activations


def forward(model, batch):
    """Class probabilities, one row per sample."""
    return _forward_pass(model, batch)[-1]


def loss(predictions, one_hot_labels):
    """Categorical cross-entropy, mean over the batch."""
    p = np.atleast_2d(np.asarray(predictions, dtype=float))
    y = np.atleast_2d(np.asarray(one_hot_labels, dtype=float))
    if p.shape != y.shape:
        raise ValueError(f"shape mismatch {p.shape} vs {y.shape}")
    return float(-(y * np.log(np.maximum(p, LOG_CLAMP))).sum() / len(p))


def _backward(model, activations, y):
    n = len(y)
    delta = (activations[-1] - y) / n
    grad_w = [None] * len(model.weights)
    grad_b = [None] * len(model.biases)
    for layer in range(len(model.weights) - 1, -1, -1):
        grad_w[layer] = activations[layer].T @ delta
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            a = activations[layer]
            delta = (delta @ model.weights[layer].T) * (a * (1.0 - a))
    return grad_w, grad_b


def gradients(model, batch, one_hot_labels):
    """Exact gradient of the loss, averaged over the batch."""
    acts = _forward_pass(model, batch)
    y = np.atleast_2d(np.asarray(one_hot_labels, dtype=float))
    if y.shape != acts[-1].shape:
        raise ValueError(f"label shape {y.shape} vs output {acts[-1].shape}")
    return _backward(model, acts, y)


def adam_step(model, state, grads):
    """In-place Adam update with bias correction."""
    grad_w, grad_b = grads
    state.step += 1
    t = state.step
    corr1 = 1.0 - state.beta1**t
    corr2 = 1.0 - state.beta2**t
    for params, g_list, m_list, v_list in (
            (model.weights, grad_w, state.m_w, state.v_w),
            (model.biases, grad_b, state.m_b, state.v_b)):
        for p, g, m, v in zip(params, g_list, m_list, v_list):
            m *= state.beta1
            m += (1.0 - state.beta1) * g
            v *= state.beta2
            v += (1.0 - state.beta2) * g * g
            p -= state.lr * (m / corr1) / (np.sqrt(v / corr2) + state.epsilon)
    return model, state


def one_hot(labels, n_classes=3):
    labels = np.asarray(labels, dtype=int)
    out = np.zeros((len(labels), n_classes))
    out[np.arange(len(labels)), labels] = 1.0
    return out


def accuracy(model, features, labels):
    """Percentage of argmax-correct predictions; ties go to the lowest index."""
    if len(features) == 0:
        raise ValueError("cannot evaluate accuracy on an empty split")
    predicted = np.argmax(forward(model, features), axis=1)
    return 100.0 * float(np.mean(predicted == np.asarray(labels)))


def train(model, train_features, train_labels, iterations, lr=1e-4,
          valid_features=None, valid_labels=None, report_every=100,
          log=None):
    """Full-batch Adam training loop; no early stopping.

    The report records train loss/accuracy every iteration and validation
    accuracy every report_every iterations (and at the final iteration).
    """
    y = one_hot(train_labels, model.dims[-1])
    labels = np.asarray(train_labels)
    state = AdamState.for_model(model, lr=lr)
    report = TrainReport()

    def record(iteration, probs):
        report.iterations.append(iteration)
        report.train_loss.append(loss(probs, y))
        report.train_accuracy.append(
            100.0 * float(np.mean(np.argmax(probs, axis=1) == labels)))

    # the forward pass feeding each gradient also provides that
    # iteration's report entry, so the loop runs one pass per step
    for it in range(iterations + 1):
        acts = _forward_pass(model, train_features)
        record(it, acts[-1])
        if it < iterations:
            adam_step(model, state, _backward(model, acts, y))
        if valid_features is not None and it > 0 and (
                it % report_every == 0 or it == iterations):
            report.valid_iterations.append(it)
            report.valid_accuracy.append(
                accuracy(model, valid_features, valid_labels))
        if log and it > 0 and (it % report_every == 0 or it == iterations):
            log(it, report)
    return report


def save_model(model, path):
    lines = [f"version {MODEL_FORMAT_VERSION}",
             "dims " + " ".join(str(d) for d in model.dims)]
    for w, b in zip(model.weights, model.biases):
        lines.extend(" ".join(f"{v:.17g}" for v in row) for row in w)
        lines.append(" ".join(f"{v:.17g}" for v in b))
    Path(path).write_text("\n".join(lines) + "\n")


def load_model(path):
    lines = Path(path).read_text().splitlines()
    tag, version = lines[0].split()
    if tag != "version" or int(version) != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model file header {lines[0]!r}")
    dims = tuple(int(d) for d in lines[1].split()[1:])
    weights = []
    biases = []
    row = 2
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        w = np.array([[float(v) for v in lines[row + i].split()]
                      for i in range(fan_in)])
        if w.shape != (fan_in, fan_out):
            raise ValueError("weight block shape mismatch")
        row += fan_in
        b = np.array([float(v) for v in lines[row].split()])
        row += 1
        weights.append(w)
        biases.append(b)
    return MlpModel(dims=dims, weights=weights, biases=biases)
