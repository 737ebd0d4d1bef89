"""The training loop: Adam on per-argument binary cross-entropy."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

import torch

from .config import TrainingConfig
from .data import Instance
from .modelio import model_file_bytes
from .nets import build_net, predict_probabilities, structure_tensor

logger = logging.getLogger("aftrain")


@dataclass(frozen=True)
class TrainingResult:
    """Exported model bytes plus the per-epoch mean loss curve."""

    model_bytes: bytes
    loss_curve: tuple[float, ...]


def _prepare(config: TrainingConfig, instances):
    prepared = []
    for instance in instances:
        if instance.features.shape[1] != config.feature_width:
            raise ValueError(
                f"{instance.name}: feature width {instance.features.shape[1]} "
                f"does not match feature set {config.feature_set} "
                f"(width {config.feature_width})")
        features = torch.as_tensor(instance.features, dtype=torch.float64)
        labels = torch.as_tensor(instance.labels, dtype=torch.float64)
        structure = structure_tensor(config.arch, instance.frame)
        positives = float(labels.sum())
        negatives = float(labels.numel()) - positives
        weight = None
        if config.pos_weight and positives > 0.0 and negatives > 0.0:
            weight = torch.tensor(negatives / positives, dtype=torch.float64)
        prepared.append((features, structure, labels, weight))
    return prepared


def fit_net(config: TrainingConfig, instances):
    """Fit a network; returns (net, per-epoch argument-weighted mean loss)."""
    if not instances:
        raise ValueError("empty training dataset")
    prepared = _prepare(config, instances)
    torch.manual_seed(config.seed)
    net = build_net(config.arch, config.feature_width, config.dropout_rate,
                    config.seed)
    optimizer = torch.optim.Adam(net.parameters(), lr=config.learning_rate)
    curve = []
    for epoch in range(1, config.epochs + 1):
        net.train()
        order = list(range(len(prepared)))
        if config.shuffle:
            random.Random(config.seed * 1_000_003 + epoch).shuffle(order)
        epoch_loss = 0.0
        epoch_args = 0
        for start in range(0, len(order), config.batch_size):
            batch = order[start:start + config.batch_size]
            optimizer.zero_grad()
            batch_loss = 0.0
            for index in batch:
                features, structure, labels, weight = prepared[index]
                logits = net(features, structure)
                loss = torch.nn.functional.binary_cross_entropy_with_logits(
                    logits, labels, pos_weight=weight)
                batch_loss = batch_loss + loss
                epoch_loss += float(loss.detach()) * labels.numel()
                epoch_args += labels.numel()
            (batch_loss / len(batch)).backward()
            optimizer.step()
        curve.append(epoch_loss / epoch_args)
        logger.info("epoch %d/%d mean loss %.6f", epoch, config.epochs,
                    curve[-1])
    return net, tuple(curve)


def export_bytes(config: TrainingConfig, net) -> bytes:
    """Serialize a fitted network to the portable model encoding."""
    return model_file_bytes(
        config.arch, config.task, config.feature_set, config.seed,
        config.threshold, config.dropout_rate, net.layer_entries())


def train(config: TrainingConfig, instances) -> TrainingResult:
    """Fit a model on (frame, features, labels) instances; export its bytes.

    Each optimizer step averages the per-argument binary cross-entropy
    over a batch of config.batch_size frameworks.
    """
    net, curve = fit_net(config, instances)
    return TrainingResult(export_bytes(config, net), curve)


def scores_for(config: TrainingConfig, net, instance: Instance):
    """Training-side probabilities for one instance (parity checks)."""
    structure = structure_tensor(config.arch, instance.frame)
    return predict_probabilities(net, instance.features, structure)
