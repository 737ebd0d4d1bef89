"""Writer for the portable model file consumed by the inference engine.

The format is one line of UTF-8 JSON with a fixed field order; every
numeric array is base64 over little-endian 64-bit floats in row-major
order. GAT layers interleave weights as [Wl_1, Wr_1, Wl_2, Wr_2, ...].
The encoding is canonical, so re-serializing identical parameters yields
identical bytes.
"""

from __future__ import annotations

import base64
import json

import numpy as np

FORMAT_VERSION = 1


def encode_array(arr: np.ndarray) -> str:
    data = np.ascontiguousarray(arr, dtype="<f8").tobytes()
    return base64.b64encode(data).decode("ascii")


def decode_array(text: str, shape: tuple[int, ...]) -> np.ndarray:
    raw = base64.b64decode(text.encode("ascii"), validate=True)
    return np.frombuffer(raw, dtype="<f8").reshape(shape).astype(np.float64)


def gcn_layer_entry(weight: np.ndarray, bias: np.ndarray,
                    activation: str, kind: str) -> dict:
    return {"kind": kind, "activation": activation,
            "dims": [int(weight.shape[0]), int(weight.shape[1])],
            "weights": [encode_array(weight)],
            "biases": [encode_array(bias)]}


def gat_layer_entry(left_weights, right_weights, biases, attentions,
                    activation: str) -> dict:
    heads = len(left_weights)
    d_in, d_out = left_weights[0].shape
    weights = []
    for wl, wr in zip(left_weights, right_weights):
        weights.append(encode_array(wl))
        weights.append(encode_array(wr))
    return {"kind": "gat-head-block", "activation": activation,
            "dims": [int(d_in), int(d_out)], "heads": heads,
            "weights": weights,
            "biases": [encode_array(b) for b in biases],
            "attention": [encode_array(a) for a in attentions]}


def model_file_bytes(arch: str, task: str, feature_set: str, seed: int,
                     threshold: float, dropout_rate: float,
                     layer_entries: list[dict]) -> bytes:
    doc = {"format_version": FORMAT_VERSION, "arch": arch, "task": task,
           "feature_set": feature_set, "seed": int(seed),
           "threshold": float(threshold), "dropout_rate": float(dropout_rate),
           "layers": layer_entries}
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")
