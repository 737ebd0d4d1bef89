#!/usr/bin/env python3
"""Regenerate the engine test suite's stored attention model.

The stored file (tests/data/gatv2-dc-co.gnn in the engine package) must
outperform the grounded-only baseline on credulous complete acceptance
over frameworks whose grounded labelling leaves arguments undecided.

Training pool: one random framework per seed in 1000..3999, sizes
8..20 (n = 8 + seed % 13), attack probability 0.25, keeping exactly the
instances with at least one undecided argument. Every fourth kept
instance is set aside as a validation slice; the network trains on the
rest. The slice is deliberately generous: ranking quality saturates
well before the pool is exhausted, while the exported threshold keeps
getting steadier the more validation instances pick it. The exported decision threshold comes from the validation
accuracy curve over a fixed grid: among thresholds within 0.002 of the
curve's maximum, the middle one is taken, which is steadier across
resamples than the raw argmax. The evaluation pool in the engine's
test suite draws from seeds 5000 and up with the same size and density
rule, so the two pools never overlap.

Everything flows through the engine's command line: framework
generation, exact labels, and feature matrices. Undecidedness is read
off the exported grounded-status feature column (0.5 marks undecided).

Usage: python3 train_acceptance_model.py <pool-dir> <out-file> [epochs [seed]]
"""

import logging
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from aftrain import (TrainingConfig, assemble_dataset, export_bytes, fit_net,
                     read_features, scores_for)
from aftrain.data import export_features

FIRST_SEED = 1000
LAST_SEED = 3999
ATTACK_PROB = 0.25
GROUNDED_STATUS_COLUMN = 6
VALIDATION_STRIDE = 4
DEFAULT_EPOCHS = 60
THRESHOLD_GRID = np.linspace(0.05, 0.95, 37)


def generate(pool: Path, seed: int) -> Path:
    target = pool / f"s{seed}-0000.af"
    if target.exists():
        return target
    n = 8 + seed % 13
    subprocess.run(
        ["afkit", "random", "-n", str(n), "--seed", str(seed), "--count", "1",
         "--attack-prob", str(ATTACK_PROB), "--out-dir", str(pool),
         "--prefix", f"s{seed}-"],
        check=True, capture_output=True)
    return target


def has_undecided(features_path: Path) -> bool:
    _, matrix = read_features(features_path)
    return bool((matrix[:, GROUNDED_STATUS_COLUMN] == 0.5).any())


def split(dataset):
    valid = [x for i, x in enumerate(dataset) if i % VALIDATION_STRIDE == 3]
    train_part = [x for i, x in enumerate(dataset)
                  if i % VALIDATION_STRIDE != 3]
    return train_part, valid


def tuned_threshold(config, net, valid):
    """Middle of the near-optimal stretch of the validation accuracy curve."""
    scores = [scores_for(config, net, inst) for inst in valid]
    labels = [np.asarray(inst.labels, dtype=bool) for inst in valid]
    accuracies = np.array([
        float(np.mean([np.mean((sc >= thr) == lab)
                       for sc, lab in zip(scores, labels)]))
        for thr in THRESHOLD_GRID])
    qualifying = np.flatnonzero(accuracies >= accuracies.max() - 0.002)
    mid = int(qualifying[len(qualifying) // 2])
    return float(THRESHOLD_GRID[mid]), float(accuracies[mid])


def main() -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    pool = Path(sys.argv[1])
    out_file = Path(sys.argv[2])
    epochs = int(sys.argv[3]) if len(sys.argv) > 3 else DEFAULT_EPOCHS
    init_seed = int(sys.argv[4]) if len(sys.argv) > 4 else 0
    work = pool / "derived"
    work.mkdir(parents=True, exist_ok=True)

    def features_for(path: Path) -> Path:
        target = work / f"{path.stem}.features.csv"
        return target if target.exists() else export_features(path, target)

    def labels_for(path: Path) -> None:
        target = work / f"{path.stem}.labels"
        if not target.exists():
            subprocess.run(
                ["afkit", "labels", str(path), "-p", "DC-CO",
                 "-o", str(target)],
                check=True, capture_output=True)

    seeds = range(FIRST_SEED, LAST_SEED + 1)
    with ThreadPoolExecutor(max_workers=8) as executor:
        af_paths = list(executor.map(lambda s: generate(pool, s), seeds))
        feature_paths = list(executor.map(features_for, af_paths))
    kept = [af for af, csv in zip(af_paths, feature_paths)
            if has_undecided(csv)]
    print(f"kept {len(kept)} of {len(af_paths)} frameworks "
          f"(undecided arguments present)", flush=True)

    with ThreadPoolExecutor(max_workers=8) as executor:
        list(executor.map(labels_for, kept))

    # Accepted arguments are rare among the undecided ones this pool
    # concentrates on, and reweighting the loss toward them measurably
    # improves how the net ranks undecided arguments.
    config = TrainingConfig(arch="GATV2", task="DC-CO", epochs=epochs,
                            seed=init_seed, pos_weight=True)
    dataset = assemble_dataset(kept, config.task, work,
                               expected_width=config.feature_width)
    train_part, valid = split(dataset)
    print(f"{len(train_part)} training / {len(valid)} validation instances",
          flush=True)
    net, curve = fit_net(config, train_part)
    threshold, accuracy = tuned_threshold(config, net, valid)
    out_file.write_bytes(export_bytes(replace(config, threshold=threshold), net))
    print(f"final loss {curve[-1]:.6f}, threshold {threshold:.3f} "
          f"(validation accuracy {accuracy:.4f}), wrote {out_file}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
