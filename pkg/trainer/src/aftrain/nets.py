"""Trainable networks mirroring the inference engine's forward semantics.

Everything runs in float64 so the exported weights reproduce the same
probabilities on both sides of the file boundary. Modules return logits;
the stored final activation is the sigmoid the engine applies.

Dropout, when enabled, acts on the carried hidden state before each
block or attention layer during training only; the residual feature copy
fed to every GCN block stays undropped.
"""

from __future__ import annotations

import math

import numpy as np
import torch
from torch import nn

from .frames import Frame
from .modelio import gat_layer_entry, gcn_layer_entry

GCN_BLOCKS = 4
GATV2_HEADS = (5, 3, 3)
GATV2_HEAD_WIDTHS = (5, 5, 1)


def _glorot(d_in: int, d_out: int, generator: torch.Generator) -> nn.Parameter:
    limit = math.sqrt(6.0 / (d_in + d_out))
    weight = torch.empty(d_in, d_out, dtype=torch.float64)
    weight.uniform_(-limit, limit, generator=generator)
    return nn.Parameter(weight)


def propagation_tensor(frame: Frame) -> torch.Tensor:
    """Degree-normalized symmetrized adjacency with one self-loop per node."""
    n = frame.n
    adjacency = torch.zeros((n, n), dtype=torch.float64)
    for a, b in frame.attacks:
        adjacency[a - 1, b - 1] = 1.0
        adjacency[b - 1, a - 1] = 1.0
    adjacency.fill_diagonal_(1.0)
    scale = adjacency.sum(dim=1).rsqrt()
    return adjacency * scale[:, None] * scale[None, :]


def neighborhood_mask(frame: Frame) -> torch.Tensor:
    """mask[i, j] is True iff j attacks i or j is i itself."""
    n = frame.n
    mask = torch.zeros((n, n), dtype=torch.bool)
    for a, b in frame.attacks:
        mask[b - 1, a - 1] = True
    mask.fill_diagonal_(True)
    return mask


class GcnNet(nn.Module):
    """Residual graph convolution: four blocks, then a dense read-out."""

    def __init__(self, width: int, dropout_rate: float = 0.0,
                 generator: torch.Generator | None = None):
        super().__init__()
        generator = generator or torch.Generator()
        self.width = width
        self.dropout = nn.Dropout(dropout_rate)
        self.block_weights = nn.ParameterList(
            _glorot(2 * width, width, generator) for _ in range(GCN_BLOCKS))
        self.block_biases = nn.ParameterList(
            nn.Parameter(torch.zeros(width, dtype=torch.float64))
            for _ in range(GCN_BLOCKS))
        self.dense_weight = _glorot(width, 1, generator)
        self.dense_bias = nn.Parameter(torch.zeros(1, dtype=torch.float64))

    def forward(self, features: torch.Tensor,
                propagation: torch.Tensor) -> torch.Tensor:
        hidden = features
        for weight, bias in zip(self.block_weights, self.block_biases):
            stacked = torch.cat([self.dropout(hidden), features], dim=1)
            hidden = torch.relu(propagation @ (stacked @ weight) + bias)
        return (hidden @ self.dense_weight + self.dense_bias)[:, 0]

    def layer_entries(self) -> list[dict]:
        entries = []
        for weight, bias in zip(self.block_weights, self.block_biases):
            entries.append(gcn_layer_entry(
                weight.detach().numpy(), bias.detach().numpy(),
                "relu", "gcn-block"))
        entries.append(gcn_layer_entry(
            self.dense_weight.detach().numpy(),
            self.dense_bias.detach().numpy(), "sigmoid", "dense"))
        return entries


class Gatv2Net(nn.Module):
    """Three multi-head attention layers over attackers-plus-self."""

    def __init__(self, width: int, dropout_rate: float = 0.0,
                 generator: torch.Generator | None = None):
        super().__init__()
        generator = generator or torch.Generator()
        self.dropout = nn.Dropout(dropout_rate)
        self.left = nn.ParameterList()
        self.right = nn.ParameterList()
        self.attention = nn.ParameterList()
        self.biases = nn.ParameterList()
        carried = width
        for heads, head_width in zip(GATV2_HEADS, GATV2_HEAD_WIDTHS):
            for _ in range(heads):
                self.left.append(_glorot(carried, head_width, generator))
                self.right.append(_glorot(carried, head_width, generator))
                attn = torch.empty(head_width, dtype=torch.float64)
                attn.uniform_(-1.0, 1.0, generator=generator)
                self.attention.append(nn.Parameter(attn))
                self.biases.append(nn.Parameter(
                    torch.zeros(head_width, dtype=torch.float64)))
            carried = heads * head_width

    def forward(self, features: torch.Tensor,
                mask: torch.Tensor) -> torch.Tensor:
        hidden = features
        cursor = 0
        for position, heads in enumerate(GATV2_HEADS):
            inputs = self.dropout(hidden)
            head_outputs = []
            for head in range(heads):
                index = cursor + head
                left = inputs @ self.left[index]
                right = inputs @ self.right[index]
                pairwise = nn.functional.leaky_relu(
                    left[:, None, :] + right[None, :, :], negative_slope=0.2)
                scores = pairwise @ self.attention[index]
                scores = scores.masked_fill(~mask, -torch.inf)
                alpha = torch.softmax(scores, dim=1)
                head_outputs.append(alpha @ right + self.biases[index])
            cursor += heads
            if position == len(GATV2_HEADS) - 1:
                return torch.stack(head_outputs).mean(dim=0)[:, 0]
            hidden = torch.relu(torch.cat(head_outputs, dim=1))
        raise AssertionError("unreachable")

    def layer_entries(self) -> list[dict]:
        entries = []
        cursor = 0
        for position, heads in enumerate(GATV2_HEADS):
            indices = range(cursor, cursor + heads)
            activation = "sigmoid" if position == len(GATV2_HEADS) - 1 else "relu"
            entries.append(gat_layer_entry(
                [self.left[i].detach().numpy() for i in indices],
                [self.right[i].detach().numpy() for i in indices],
                [self.biases[i].detach().numpy() for i in indices],
                [self.attention[i].detach().numpy() for i in indices],
                activation))
            cursor += heads
        return entries


def build_net(arch: str, width: int, dropout_rate: float,
              seed: int) -> nn.Module:
    generator = torch.Generator()
    generator.manual_seed(seed)
    if arch == "GCN":
        return GcnNet(width, dropout_rate, generator)
    return Gatv2Net(width, dropout_rate, generator)


def structure_tensor(arch: str, frame: Frame) -> torch.Tensor:
    return propagation_tensor(frame) if arch == "GCN" \
        else neighborhood_mask(frame)


def predict_probabilities(net: nn.Module, features: np.ndarray,
                          structure: torch.Tensor) -> np.ndarray:
    """Inference-mode per-argument probabilities for parity checks."""
    net.eval()
    with torch.no_grad():
        logits = net(torch.as_tensor(features, dtype=torch.float64), structure)
    return torch.sigmoid(logits).numpy()
