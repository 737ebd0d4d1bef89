"""Dataset plumbing: label files, feature files, and the engine subprocess.

Features are never recomputed here. They are produced by the inference
engine's own exporter (the `afkit features` subprocess) so that training
and inference see bit-identical inputs, and read back from its CSV.
"""

from __future__ import annotations

import subprocess
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .frames import Frame, load_frame

ENGINE_COMMAND = "afkit"


@dataclass(frozen=True)
class Instance:
    """One training example: a frame, its features, and its YES/NO labels."""

    name: str
    frame: Frame
    features: np.ndarray
    labels: np.ndarray


def parse_labels(text: str, frame: Frame) -> np.ndarray:
    values: dict[int, bool] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("YES", "NO"):
            raise ValueError(f"line {lineno}: expected '<argument> YES|NO', "
                             f"got {line!r}")
        index = frame.index_of(parts[0]) if not parts[0].isdigit() \
            else int(parts[0])
        if not 1 <= index <= frame.n:
            raise ValueError(f"line {lineno}: argument {parts[0]!r} outside "
                             f"1..{frame.n}")
        if index in values:
            raise ValueError(f"line {lineno}: duplicate label for {parts[0]!r}")
        values[index] = parts[1] == "YES"
    missing = [i for i in range(1, frame.n + 1) if i not in values]
    if missing:
        raise ValueError(f"missing labels for arguments {missing}")
    return np.array([values[i] for i in range(1, frame.n + 1)], dtype=bool)


def read_features(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read the engine's feature CSV; returns (argument names, matrix)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("argument,"):
        raise ValueError(f"{path}: not a feature export")
    names = []
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        names.append(cells[0])
        rows.append([float(cell) for cell in cells[1:]])
    return names, np.asarray(rows, dtype=np.float64)


def _run_engine(args: list[str]) -> None:
    result = subprocess.run([ENGINE_COMMAND, *args], capture_output=True,
                            text=True)
    if result.returncode != 0:
        raise RuntimeError(
            f"{ENGINE_COMMAND} {' '.join(args)} failed "
            f"(exit {result.returncode}): {result.stderr.strip()}")


def export_features(af_path: str | Path, out_path: str | Path,
                    layout: str = "P11", seed: int = 0,
                    fmt: str = "iccma23") -> Path:
    """Have the inference engine write its feature CSV for one frame."""
    out_path = Path(out_path)
    _run_engine(["features", str(af_path), "--layout", layout,
                 "--seed", str(seed), "-fo", fmt, "-o", str(out_path)])
    return out_path


def export_labels(af_path: str | Path, out_path: str | Path, task: str,
                  fmt: str = "iccma23") -> Path:
    """Have the inference engine's oracle write exact labels for one frame."""
    out_path = Path(out_path)
    _run_engine(["labels", str(af_path), "-p", task, "-fo", fmt,
                 "-o", str(out_path)])
    return out_path


def load_instance(af_path: str | Path, labels_path: str | Path,
                  features_path: str | Path, fmt: str = "iccma23",
                  expected_width: int | None = None) -> Instance:
    frame = load_frame(af_path, fmt)
    labels = parse_labels(Path(labels_path).read_text(encoding="utf-8"), frame)
    names, features = read_features(features_path)
    if len(names) != frame.n:
        raise ValueError(f"{features_path}: {len(names)} feature rows for "
                         f"{frame.n} arguments")
    if expected_width is not None and features.shape[1] != expected_width:
        raise ValueError(
            f"{features_path}: feature width {features.shape[1]} does not "
            f"match the declared feature set width {expected_width}")
    return Instance(Path(af_path).stem, frame, features, labels)


def assemble_dataset(af_paths, task: str, work_dir: str | Path,
                     layout: str = "P11", seed: int = 0,
                     fmt: str = "iccma23",
                     expected_width: int | None = None) -> list[Instance]:
    """Export labels and features for every frame file, then load them."""
    work_dir = Path(work_dir)
    work_dir.mkdir(parents=True, exist_ok=True)
    instances = []
    for af_path in af_paths:
        stem = Path(af_path).stem
        labels_path = work_dir / f"{stem}.labels"
        features_path = work_dir / f"{stem}.features.csv"
        if not labels_path.exists():
            export_labels(af_path, labels_path, task, fmt)
        if not features_path.exists():
            export_features(af_path, features_path, layout, seed, fmt)
        instances.append(load_instance(af_path, labels_path, features_path,
                                       fmt, expected_width))
    return instances
