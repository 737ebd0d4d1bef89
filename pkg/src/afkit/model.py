"""Portable model container for the two inference architectures.

A model file is a single line of UTF-8 JSON with a fixed field order:

  {"format_version": 1, "arch": ..., "task": ..., "feature_set": ...,
   "seed": ..., "threshold": ..., "dropout_rate": ..., "layers": [...]}

Each layer object holds {kind, activation, dims, heads?, weights, biases,
attention?} where every numeric array is base64 over little-endian 64-bit
floats in row-major order. The encoding is canonical: serializing a loaded
model reproduces the input bytes exactly, and two equal models serialize
to identical bytes.

Layer kinds:
  gcn-block       one weight matrix and one bias vector; the forward pass
                  feeds it the previous activation concatenated with the
                  original features, so dims[0] is twice the feature width
                  for the first block.
  dense           final linear map to one output column.
  gat-head-block  per head: a left and a right transform (applied to the
                  attended node and to its neighbor), one attention vector,
                  one bias vector. dims[1] is the per-head output width.
"""

from __future__ import annotations

import base64
import binascii
import json
from dataclasses import dataclass, field

import numpy as np

from .grounded import TASKS
from .validation import FEATURE_SETS, FEATURE_WIDTHS

__all__ = ["ModelFormatError", "LayerSpec", "GnnModel", "validate_model",
           "save_model", "load_model", "random_gcn_model", "random_gatv2_model",
           "ARCHITECTURES", "ACTIVATIONS", "LAYER_KINDS", "FORMAT_VERSION",
           "GATV2_HEADS", "GATV2_HEAD_WIDTHS", "GCN_BLOCKS"]

FORMAT_VERSION = 1
ARCHITECTURES = ("GCN", "GATV2")
ACTIVATIONS = ("relu", "leaky-relu(0.2)", "sigmoid", "identity")
LAYER_KINDS = ("gcn-block", "dense", "gat-head-block")
GCN_BLOCKS = 4
GATV2_HEADS = (5, 3, 3)
GATV2_HEAD_WIDTHS = (5, 5, 1)


class ModelFormatError(ValueError):
    """Raised for malformed, inconsistent, or unsupported model files."""


def _arrays_equal(left, right) -> bool:
    return len(left) == len(right) and all(
        a.shape == b.shape and np.array_equal(a, b) for a, b in zip(left, right))


@dataclass(frozen=True, eq=False)
class LayerSpec:
    """One layer's geometry, parameters, and post-aggregation activation."""

    kind: str
    activation: str
    dims: tuple[int, int]
    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]
    heads: int = 0
    attention: tuple[np.ndarray, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, LayerSpec):
            return NotImplemented
        return (self.kind == other.kind
                and self.activation == other.activation
                and self.dims == other.dims
                and self.heads == other.heads
                and _arrays_equal(self.weights, other.weights)
                and _arrays_equal(self.biases, other.biases)
                and _arrays_equal(self.attention, other.attention))


@dataclass(frozen=True, eq=False)
class GnnModel:
    """A complete, immutable inference model."""

    arch: str
    task: str
    feature_set: str
    seed: int
    threshold: float
    dropout_rate: float
    layers: tuple[LayerSpec, ...]

    def __eq__(self, other):
        if not isinstance(other, GnnModel):
            return NotImplemented
        return (self.arch == other.arch
                and self.task == other.task
                and self.feature_set == other.feature_set
                and self.seed == other.seed
                and self.threshold == other.threshold
                and self.dropout_rate == other.dropout_rate
                and self.layers == other.layers)


def _check_layer_arrays(layer: LayerSpec, index: int) -> None:
    d_in, d_out = layer.dims
    if layer.kind in ("gcn-block", "dense"):
        if layer.heads != 0 or layer.attention:
            raise ModelFormatError(
                f"layer {index}: {layer.kind} must not carry heads or attention")
        if len(layer.weights) != 1 or len(layer.biases) != 1:
            raise ModelFormatError(
                f"layer {index}: {layer.kind} needs exactly one weight matrix and one bias")
        expected = [(layer.weights[0], (d_in, d_out)), (layer.biases[0], (d_out,))]
    else:
        h = layer.heads
        if h < 1:
            raise ModelFormatError(f"layer {index}: head count must be positive")
        if len(layer.weights) != 2 * h or len(layer.biases) != h or len(layer.attention) != h:
            raise ModelFormatError(
                f"layer {index}: expected {2 * h} weight matrices, {h} biases, "
                f"{h} attention vectors")
        expected = [(w, (d_in, d_out)) for w in layer.weights]
        expected += [(b, (d_out,)) for b in layer.biases]
        expected += [(a, (d_out,)) for a in layer.attention]
    for arr, shape in expected:
        if arr.shape != shape:
            raise ModelFormatError(
                f"layer {index}: array shape {arr.shape} does not match declared {shape}")


def validate_model(model: GnnModel) -> GnnModel:
    """Check tags, layer geometry, and dimension chaining; return the model."""
    if model.arch not in ARCHITECTURES:
        raise ModelFormatError(f"unknown arch {model.arch!r}")
    if model.task not in TASKS:
        raise ModelFormatError(f"unknown task {model.task!r}")
    if model.feature_set not in FEATURE_SETS:
        raise ModelFormatError(f"unknown feature set {model.feature_set!r}")
    if not 0.0 < model.threshold < 1.0:
        raise ModelFormatError(f"threshold {model.threshold} outside (0, 1)")
    if not 0.0 <= model.dropout_rate < 1.0:
        raise ModelFormatError(f"dropout rate {model.dropout_rate} outside [0, 1)")
    for index, layer in enumerate(model.layers):
        if layer.kind not in LAYER_KINDS:
            raise ModelFormatError(f"layer {index}: unknown kind {layer.kind!r}")
        if layer.activation not in ACTIVATIONS:
            raise ModelFormatError(
                f"layer {index}: unknown activation {layer.activation!r}")
        _check_layer_arrays(layer, index)

    width = FEATURE_WIDTHS[model.feature_set]
    if model.arch == "GCN":
        if len(model.layers) < 2 or model.layers[-1].kind != "dense" or any(
                layer.kind != "gcn-block" for layer in model.layers[:-1]):
            raise ModelFormatError("GCN models need gcn-blocks followed by one dense layer")
        carried = width
        for index, layer in enumerate(model.layers[:-1]):
            if layer.dims[0] != carried + width:
                raise ModelFormatError(
                    f"layer {index}: input width {layer.dims[0]} does not match "
                    f"residual concatenation width {carried + width}")
            carried = layer.dims[1]
        dense = model.layers[-1]
        if dense.dims != (carried, 1):
            raise ModelFormatError(
                f"dense layer dims {dense.dims} do not match ({carried}, 1)")
    else:
        if model.feature_set != "P11":
            raise ModelFormatError("GATV2 models require the P11 feature set")
        if len(model.layers) != 3 or any(
                layer.kind != "gat-head-block" for layer in model.layers):
            raise ModelFormatError("GATV2 models need exactly 3 gat-head-blocks")
        heads = tuple(layer.heads for layer in model.layers)
        widths = tuple(layer.dims[1] for layer in model.layers)
        if heads != GATV2_HEADS or widths != GATV2_HEAD_WIDTHS:
            raise ModelFormatError(
                f"GATV2 geometry must be heads {GATV2_HEADS} with per-head widths "
                f"{GATV2_HEAD_WIDTHS}, got heads {heads} widths {widths}")
        carried = width
        for index, layer in enumerate(model.layers):
            if layer.dims[0] != carried:
                raise ModelFormatError(
                    f"layer {index}: input width {layer.dims[0]} does not match {carried}")
            carried = layer.heads * layer.dims[1]
        # the last layer averages heads, so its output width is dims[1] = 1
    return model


def _encode_array(arr: np.ndarray) -> str:
    return base64.b64encode(np.ascontiguousarray(arr, dtype="<f8").tobytes()).decode("ascii")


def _decode_array(text: str, shape: tuple[int, ...]) -> np.ndarray:
    try:
        raw = base64.b64decode(text.encode("ascii"), validate=True)
    except (binascii.Error, UnicodeEncodeError, AttributeError) as exc:
        raise ModelFormatError(f"bad array encoding: {exc}") from exc
    count = int(np.prod(shape, dtype=np.int64))
    if len(raw) != 8 * count:
        raise ModelFormatError(
            f"array payload holds {len(raw)} bytes, expected {8 * count}")
    return np.frombuffer(raw, dtype="<f8").astype(np.float64).reshape(shape)


def save_model(model: GnnModel) -> bytes:
    """Serialize to the canonical single-line encoding."""
    validate_model(model)
    layers = []
    for layer in model.layers:
        entry = {"kind": layer.kind, "activation": layer.activation,
                 "dims": list(layer.dims)}
        if layer.kind == "gat-head-block":
            entry["heads"] = layer.heads
        entry["weights"] = [_encode_array(w) for w in layer.weights]
        entry["biases"] = [_encode_array(b) for b in layer.biases]
        if layer.kind == "gat-head-block":
            entry["attention"] = [_encode_array(a) for a in layer.attention]
        layers.append(entry)
    doc = {"format_version": FORMAT_VERSION, "arch": model.arch,
           "task": model.task, "feature_set": model.feature_set,
           "seed": model.seed, "threshold": model.threshold,
           "dropout_rate": model.dropout_rate, "layers": layers}
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")


def _layer_from_entry(entry, index: int) -> LayerSpec:
    if not isinstance(entry, dict):
        raise ModelFormatError(f"layer {index}: expected an object")
    try:
        kind = entry["kind"]
        activation = entry["activation"]
        dims = entry["dims"]
        weights = entry["weights"]
        biases = entry["biases"]
    except KeyError as exc:
        raise ModelFormatError(f"layer {index}: missing field {exc}") from exc
    if (not isinstance(dims, list) or len(dims) != 2
            or not all(isinstance(d, int) and d > 0 for d in dims)):
        raise ModelFormatError(f"layer {index}: dims must be two positive integers")
    d_in, d_out = dims
    heads = entry.get("heads", 0)
    if not isinstance(heads, int) or heads < 0:
        raise ModelFormatError(f"layer {index}: heads must be a non-negative integer")
    shape = (d_in, d_out)
    if not isinstance(weights, list) or not isinstance(biases, list):
        raise ModelFormatError(f"layer {index}: weights and biases must be lists")
    attention = entry.get("attention", [])
    if not isinstance(attention, list):
        raise ModelFormatError(f"layer {index}: attention must be a list")
    return LayerSpec(
        kind=kind, activation=activation, dims=(d_in, d_out),
        weights=tuple(_decode_array(w, shape) for w in weights),
        biases=tuple(_decode_array(b, (d_out,)) for b in biases),
        heads=heads,
        attention=tuple(_decode_array(a, (d_out,)) for a in attention))


def load_model(data: bytes) -> GnnModel:
    """Parse and validate a model file."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"not a model file: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must hold a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported format version {version!r}, expected {FORMAT_VERSION}")
    try:
        arch = doc["arch"]
        task = doc["task"]
        feature_set = doc["feature_set"]
        seed = doc["seed"]
        threshold = doc["threshold"]
        dropout_rate = doc["dropout_rate"]
        layer_entries = doc["layers"]
    except KeyError as exc:
        raise ModelFormatError(f"missing field {exc}") from exc
    if not isinstance(seed, int):
        raise ModelFormatError("seed must be an integer")
    if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
        raise ModelFormatError("threshold must be a number")
    if not isinstance(dropout_rate, (int, float)) or isinstance(dropout_rate, bool):
        raise ModelFormatError("dropout_rate must be a number")
    if not isinstance(layer_entries, list):
        raise ModelFormatError("layers must be a list")
    layers = tuple(_layer_from_entry(entry, index)
                   for index, entry in enumerate(layer_entries))
    model = GnnModel(arch=arch, task=task, feature_set=feature_set,
                     seed=int(seed), threshold=float(threshold),
                     dropout_rate=float(dropout_rate), layers=layers)
    return validate_model(model)


def _glorot(rng, d_in: int, d_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (d_in + d_out))
    return rng.uniform(-limit, limit, size=(d_in, d_out))


def random_gcn_model(feature_set: str = "P11", task: str = "DC-CO",
                     seed: int = 0, threshold: float = 0.5,
                     dropout_rate: float = 0.0) -> GnnModel:
    """Glorot-initialized GCN with the standard 4-block residual geometry."""
    width = FEATURE_WIDTHS[feature_set]
    rng = np.random.default_rng(seed)
    layers = [LayerSpec(kind="gcn-block", activation="relu",
                        dims=(2 * width, width),
                        weights=(_glorot(rng, 2 * width, width),),
                        biases=(np.zeros(width),))
              for _ in range(GCN_BLOCKS)]
    layers.append(LayerSpec(kind="dense", activation="sigmoid",
                            dims=(width, 1),
                            weights=(_glorot(rng, width, 1),),
                            biases=(np.zeros(1),)))
    model = GnnModel(arch="GCN", task=task, feature_set=feature_set,
                     seed=int(seed), threshold=threshold,
                     dropout_rate=dropout_rate, layers=tuple(layers))
    return validate_model(model)


def random_gatv2_model(task: str = "DC-CO", seed: int = 0,
                       threshold: float = 0.5,
                       dropout_rate: float = 0.0) -> GnnModel:
    """Glorot-initialized GATV2 with the fixed 3-layer head geometry."""
    rng = np.random.default_rng(seed)
    layers = []
    carried = FEATURE_WIDTHS["P11"]
    for position, (heads, head_width) in enumerate(zip(GATV2_HEADS, GATV2_HEAD_WIDTHS)):
        weights = []
        biases = []
        attention = []
        for _ in range(heads):
            weights.append(_glorot(rng, carried, head_width))
            weights.append(_glorot(rng, carried, head_width))
            biases.append(np.zeros(head_width))
            attention.append(rng.uniform(-1.0, 1.0, size=head_width))
        activation = "sigmoid" if position == len(GATV2_HEADS) - 1 else "relu"
        layers.append(LayerSpec(kind="gat-head-block", activation=activation,
                                dims=(carried, head_width),
                                weights=tuple(weights), biases=tuple(biases),
                                heads=heads, attention=tuple(attention)))
        carried = heads * head_width
    model = GnnModel(arch="GATV2", task=task, feature_set="P11",
                     seed=int(seed), threshold=threshold,
                     dropout_rate=dropout_rate, layers=tuple(layers))
    return validate_model(model)
