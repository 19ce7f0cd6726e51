"""Feedforward nets with hand-derived backpropagation, used as reference
autoencoders: squared reconstruction error, per-example gradient descent,
and learning rates scaled per layer by 1/sqrt(fan-in)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

ACTIVATIONS = ("sigmoid", "tanh", "linear")


@dataclass
class NetTrainConfig:
    lambda_factor: float = 0.5
    epochs: int = 200
    seed: int = 0
    init_scale: float = 0.1

    def __post_init__(self):
        if self.lambda_factor <= 0:
            raise ValueError("lambda_factor must be positive")


@dataclass
class FeedforwardNet:
    layer_sizes: list[int]
    weights: list[np.ndarray]  # weights[l] maps layer l activations to l+1
    biases: list[np.ndarray]
    activations: list[str]


def activation(kind: str, a):
    if kind == "sigmoid":
        return 1.0 / (1.0 + np.exp(-np.asarray(a, dtype=float)))
    if kind == "tanh":
        return np.tanh(a)
    if kind == "linear":
        return np.asarray(a, dtype=float)
    raise ValueError(f"unknown activation: {kind!r}")


def activation_deriv(kind: str, a):
    """Derivative with respect to the pre-activation."""
    if kind == "sigmoid":
        s = activation("sigmoid", a)
        return s * (1.0 - s)
    if kind == "tanh":
        return 1.0 - np.tanh(a) ** 2
    if kind == "linear":
        return np.ones_like(np.asarray(a, dtype=float))
    raise ValueError(f"unknown activation: {kind!r}")


def init_net(layer_sizes, activations, init_scale: float,
             rng: np.random.Generator) -> FeedforwardNet:
    """Uniform weights in [-init_scale, init_scale], zero biases."""
    if len(activations) != len(layer_sizes) - 1:
        raise ValueError("need one activation per weight layer")
    for kind in activations:
        if kind not in ACTIVATIONS:
            raise ValueError(f"unknown activation: {kind!r}")
    weights = []
    biases = []
    for n_in, n_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        weights.append(rng.uniform(-init_scale, init_scale, size=(n_out, n_in)))
        biases.append(np.zeros(n_out))
    return FeedforwardNet(list(layer_sizes), weights, biases, list(activations))


def forward(net: FeedforwardNet, x) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Propagate one input; returns (pre-activations, activations).

    The activation list starts with the input itself, so the network output
    is its last entry. All intermediates are kept for backprop.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (net.layer_sizes[0],):
        raise ValueError(f"input must have length {net.layer_sizes[0]}")
    pre = []
    act = [x]
    for W, b, kind in zip(net.weights, net.biases, net.activations):
        a = W @ act[-1] + b
        pre.append(a)
        act.append(activation(kind, a))
    return pre, act


def output(net: FeedforwardNet, x) -> np.ndarray:
    return forward(net, x)[1][-1]


def loss(net: FeedforwardNet, x, target) -> float:
    """Half the squared reconstruction error for one example."""
    y = output(net, x)
    t = np.asarray(target, dtype=float)
    return float(0.5 * np.sum((y - t) ** 2))


def backprop(net: FeedforwardNet, x, target):
    """Gradients of the squared-error loss for every weight and bias.

    Output deltas are (y - t) times the output activation derivative, which
    collapses to y - t for a linear output layer; hidden deltas are pushed
    backwards through the transposed weights.
    """
    target = np.asarray(target, dtype=float)
    if target.shape != (net.layer_sizes[-1],):
        raise ValueError(f"target must have length {net.layer_sizes[-1]}")
    pre, act = forward(net, x)
    L = len(net.weights)
    deltas = [None] * L
    deltas[-1] = (act[-1] - target) * activation_deriv(net.activations[-1], pre[-1])
    for l in range(L - 2, -1, -1):
        deltas[l] = activation_deriv(net.activations[l], pre[l]) * (
            net.weights[l + 1].T @ deltas[l + 1])
    grad_w = [np.outer(deltas[l], act[l]) for l in range(L)]
    grad_b = [deltas[l].copy() for l in range(L)]
    return grad_w, grad_b


def layer_learning_rates(cfg: NetTrainConfig, n_inputs: int) -> tuple[float, float]:
    """Weight and bias rates for a layer with n_inputs incoming units.

    Weights get lambda_factor / sqrt(n_inputs); the bias rate is ten times
    smaller, since there are far fewer biases than weights to settle.
    """
    if n_inputs < 1:
        raise ValueError("n_inputs must be >= 1")
    lw = cfg.lambda_factor / np.sqrt(n_inputs)
    return float(lw), float(lw / 10.0)


def sgd_step(net: FeedforwardNet, x, target, cfg: NetTrainConfig):
    grad_w, grad_b = backprop(net, x, target)
    for l in range(len(net.weights)):
        lw, lb = layer_learning_rates(cfg, net.layer_sizes[l])
        net.weights[l] -= lw * grad_w[l]
        net.biases[l] -= lb * grad_b[l]


def reconstruction_error(net: FeedforwardNet, data) -> float:
    """Mean half-squared error of reconstructing each vector from itself."""
    data = np.asarray(data, dtype=float)
    return float(np.mean([loss(net, x, x) for x in data]))


def train_autoencoder(data, bottleneck: int, cfg: NetTrainConfig) -> FeedforwardNet:
    """Fit an n-bottleneck-n net (sigmoid hidden, linear output) by
    per-example gradient descent, visiting examples in a seeded shuffled
    order each epoch."""
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] == 0:
        raise ValueError("data must be a nonempty 2-d array")
    n = data.shape[1]
    if bottleneck >= n:
        warnings.warn(f"bottleneck {bottleneck} >= input size {n}; "
                      "the net may just learn the identity")
    rng = np.random.default_rng(cfg.seed)
    net = init_net([n, bottleneck, n], ["sigmoid", "linear"], cfg.init_scale, rng)
    for _ in range(cfg.epochs):
        for i in rng.permutation(data.shape[0]):
            sgd_step(net, data[i], data[i], cfg)
    return net


def encode(net: FeedforwardNet, x) -> np.ndarray:
    """Activations of the narrowest hidden layer."""
    hidden = net.layer_sizes[1:-1]
    if not hidden:
        raise ValueError("net has no hidden layer")
    idx = 1 + int(np.argmin(hidden))
    return forward(net, x)[1][idx]


def word_feature_matrix(sentences, d: int, cfg: NetTrainConfig) -> np.ndarray:
    """Learn d features per vocabulary slot from one-hot-style sentence
    vectors: train a V-d-V autoencoder and hand back the input-to-hidden
    weights, one column per word."""
    sentences = np.asarray(sentences, dtype=float)
    net = train_autoencoder(sentences, d, cfg)
    return net.weights[0]
