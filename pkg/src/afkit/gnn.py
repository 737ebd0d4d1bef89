"""Forward-pass inference for the residual GCN and the GATV2.

Both architectures score every argument of a framework in one pass and
return per-argument probabilities in (0, 1). Dropout exists only as stored
training metadata; inference never drops units, so repeated runs are
bit-identical.

GCN: each block propagates with the degree-normalized symmetrized adjacency
(self-loop on every argument) and receives its input concatenated with the
original feature matrix, then a dense layer reduces to one column and a
sigmoid turns it into a probability.

GATV2: three multi-head attention layers. A node attends over its attackers
plus itself; attention logits are a'(leaky-relu(Wl h_i + Wr h_j)) and the
aggregated value is the attention-weighted sum of Wr h_j plus a bias. Head
results are concatenated after the first two layers and averaged after the
last, followed by the stored activation (sigmoid in standard models).
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.special import expit
from sklearn.base import BaseEstimator

from .features import EmbeddingBuilder, FeatureMatrix
from .model import GnnModel, validate_model
from .validation import FEATURE_WIDTHS, check_features, check_framework

__all__ = ["propagation_matrix", "gcn_layer", "gcn_forward", "gat_head",
           "gatv2_forward", "attention_coefficients", "forward",
           "AcceptabilityPredictor", "ACTIVATION_FUNCTIONS"]

ACTIVATION_FUNCTIONS = {
    "relu": lambda x: np.maximum(x, 0.0),
    "leaky-relu(0.2)": lambda x: np.where(x > 0.0, x, 0.2 * x),
    "sigmoid": expit,
    "identity": lambda x: x,
}

_LEAKY = ACTIVATION_FUNCTIONS["leaky-relu(0.2)"]


def propagation_matrix(af) -> sp.csr_matrix:
    """D^{-1/2} A D^{-1/2} for the symmetrized adjacency with self-loops."""
    check_framework(af)
    edges = af.edge_array
    loops = np.arange(af.n, dtype=np.int64)
    rows = np.concatenate([edges[:, 0], edges[:, 1], loops])
    cols = np.concatenate([edges[:, 1], edges[:, 0], loops])
    adj = sp.coo_matrix((np.ones(rows.shape[0]), (rows, cols)), shape=(af.n, af.n))
    adj.sum_duplicates()
    adj.data[:] = 1.0
    degree = np.asarray(adj.sum(axis=1)).ravel()
    scale = 1.0 / np.sqrt(degree)
    normalized = sp.coo_matrix(
        (scale[adj.row] * scale[adj.col], (adj.row, adj.col)), shape=adj.shape)
    return normalized.tocsr()


def _feature_values(model: GnnModel, features, af) -> np.ndarray:
    width = FEATURE_WIDTHS[model.feature_set]
    if isinstance(features, FeatureMatrix):
        if features.layout != model.feature_set:
            raise ValueError(
                f"feature layout {features.layout} does not match the model's "
                f"feature set {model.feature_set}")
        values = features.values
    else:
        values = features
    return check_features(values, af.n, width)


def gcn_layer(H, af, W, bias=None, activation: str = "identity") -> np.ndarray:
    """One graph convolution: activation(D^{-1/2} A D^{-1/2} H W + bias)."""
    H = np.asarray(H, dtype=np.float64)
    W = np.asarray(W, dtype=np.float64)
    if H.ndim != 2 or W.ndim != 2 or H.shape[1] != W.shape[0]:
        raise ValueError(
            f"incompatible shapes: H is {H.shape}, W is {W.shape}")
    if H.shape[0] != af.n:
        raise ValueError(f"H has {H.shape[0]} rows for {af.n} arguments")
    out = propagation_matrix(af) @ (H @ W)
    if bias is not None:
        out = out + np.asarray(bias, dtype=np.float64)
    return ACTIVATION_FUNCTIONS[activation](out)


def gcn_forward(model: GnnModel, features, af) -> np.ndarray:
    """Per-argument probabilities from a GCN model."""
    validate_model(model)
    if model.arch != "GCN":
        raise ValueError(f"expected a GCN model, got arch {model.arch}")
    H0 = _feature_values(model, features, af)
    prop = propagation_matrix(af)
    H = H0
    for block in model.layers[:-1]:
        stacked = np.hstack([H, H0])
        H = ACTIVATION_FUNCTIONS[block.activation](
            prop @ (stacked @ block.weights[0]) + block.biases[0])
    dense = model.layers[-1]
    out = H @ dense.weights[0] + dense.biases[0]
    return ACTIVATION_FUNCTIONS[dense.activation](out)[:, 0]


def _attention_edges(af):
    """Deduplicated (dst, src) pairs: each node attends to attackers and itself."""
    edges = af.edge_array
    loops = np.arange(af.n, dtype=np.int64)
    dst = np.concatenate([edges[:, 1], loops])
    src = np.concatenate([edges[:, 0], loops])
    pairs = np.unique(np.stack([dst, src], axis=1), axis=0)
    return pairs[:, 0], pairs[:, 1]


def _segment_softmax(scores: np.ndarray, segments: np.ndarray, n: int) -> np.ndarray:
    peak = np.full(n, -np.inf)
    np.maximum.at(peak, segments, scores)
    shifted = np.exp(scores - peak[segments])
    total = np.zeros(n)
    np.add.at(total, segments, shifted)
    return shifted / total[segments]


def _head_attention(H, dst, src, w_left, w_right, attention, n):
    right = H @ w_right
    logits = _LEAKY((H @ w_left)[dst] + right[src]) @ attention
    return right, _segment_softmax(logits, dst, n)


def gat_head(H, af, w_left, w_right, attention, bias=None) -> np.ndarray:
    """One attention head: weighted sum of transformed attacker-or-self rows.

    For each node i, attention logits a'(leaky-relu(Wl h_i + Wr h_j)) are
    softmax-normalized over j in attackers(i) plus i itself, and the output
    row is the weighted sum of Wr h_j plus the bias. No activation applied.
    """
    check_framework(af)
    H = np.asarray(H, dtype=np.float64)
    w_left = np.asarray(w_left, dtype=np.float64)
    w_right = np.asarray(w_right, dtype=np.float64)
    attention = np.asarray(attention, dtype=np.float64)
    if H.ndim != 2 or H.shape[0] != af.n:
        raise ValueError(f"H must be ({af.n}, d), got {H.shape}")
    if (w_left.shape != w_right.shape or w_left.ndim != 2
            or w_left.shape[0] != H.shape[1]
            or attention.shape != (w_left.shape[1],)):
        raise ValueError(
            f"incompatible head shapes: H {H.shape}, Wl {w_left.shape}, "
            f"Wr {w_right.shape}, attention {attention.shape}")
    dst, src = _attention_edges(af)
    right, alpha = _head_attention(H, dst, src, w_left, w_right, attention, af.n)
    out = np.zeros((af.n, w_right.shape[1]))
    np.add.at(out, dst, alpha[:, None] * right[src])
    if bias is not None:
        out = out + np.asarray(bias, dtype=np.float64)
    return out


def _gatv2_run(model: GnnModel, features, af, record: bool = False):
    validate_model(model)
    if model.arch != "GATV2":
        raise ValueError(f"expected a GATV2 model, got arch {model.arch}")
    H = _feature_values(model, features, af)
    dst, src = _attention_edges(af)
    recorded = []
    last = len(model.layers) - 1
    for position, layer in enumerate(model.layers):
        head_outputs = []
        layer_attention = []
        for head in range(layer.heads):
            right, alpha = _head_attention(
                H, dst, src, layer.weights[2 * head], layer.weights[2 * head + 1],
                layer.attention[head], af.n)
            aggregated = np.zeros((af.n, layer.dims[1]))
            np.add.at(aggregated, dst, alpha[:, None] * right[src])
            head_outputs.append(aggregated + layer.biases[head])
            if record:
                layer_attention.append(alpha)
        if position == last:
            combined = np.mean(head_outputs, axis=0)
        else:
            combined = np.hstack(head_outputs)
        H = ACTIVATION_FUNCTIONS[layer.activation](combined)
        if record:
            recorded.append(layer_attention)
    return H[:, 0], recorded


def gatv2_forward(model: GnnModel, features, af) -> np.ndarray:
    """Per-argument probabilities from a GATV2 model."""
    return _gatv2_run(model, features, af)[0]


def attention_coefficients(model: GnnModel, features, af):
    """Attention weights per layer and head, with the (dst, src) edge index.

    Returns ((dst, src), layers) where layers[k][h] is the weight array
    aligned with the edge index; weights for a fixed dst sum to 1.
    """
    check_framework(af)
    dst, src = _attention_edges(af)
    _, recorded = _gatv2_run(model, features, af, record=True)
    return (dst, src), recorded


def forward(model: GnnModel, features, af) -> np.ndarray:
    """Architecture dispatch for a single forward pass."""
    if model.arch == "GCN":
        return gcn_forward(model, features, af)
    return gatv2_forward(model, features, af)


class AcceptabilityPredictor(BaseEstimator):
    """Estimator-style interface scoring the arguments of one framework.

    Arguments play the role of samples: predict_proba returns one row per
    argument with [P(NO), P(YES)] columns, predict returns the thresholded
    YES decisions, and score_arguments exposes the raw sigmoid outputs.
    """

    def __init__(self, model: GnnModel = None):
        self.model = model

    def _require_model(self) -> GnnModel:
        if self.model is None:
            raise ValueError("no model attached; construct with model=...")
        return self.model

    def fit(self, af, y=None):
        validate_model(self._require_model())
        check_framework(af)
        return self

    def score_arguments(self, af, features=None) -> np.ndarray:
        model = self._require_model()
        if features is None:
            features = EmbeddingBuilder(model.feature_set, model.seed).build(af)
        return forward(model, features, af)

    def predict_proba(self, af, features=None) -> np.ndarray:
        yes = self.score_arguments(af, features)
        return np.column_stack([1.0 - yes, yes])

    def predict(self, af, features=None) -> np.ndarray:
        model = self._require_model()
        return self.score_arguments(af, features) >= model.threshold
