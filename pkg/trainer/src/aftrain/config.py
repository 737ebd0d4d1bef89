"""Training configuration with the standard protocol defaults."""

from __future__ import annotations

from dataclasses import dataclass, fields

ARCHITECTURES = ("GCN", "GATV2")
TASKS = ("DC-CO", "DC-ST", "DS-PR", "DS-ST")
FEATURE_SETS = ("P11", "P128")
FEATURE_WIDTHS = {"P11": 11, "P128": 128}
DEFAULT_BATCH_SIZES = {"GCN": 64, "GATV2": 4}


@dataclass(frozen=True)
class TrainingConfig:
    """Hyperparameters and bookkeeping for one training run.

    batch_size counts frameworks per optimizer step and defaults by
    architecture: 64 for GCN, 4 for GATV2. pos_weight switches on
    per-instance positive-class reweighting of the cross-entropy and is
    off by default.
    """

    arch: str
    task: str
    feature_set: str = "P11"
    learning_rate: float = 0.01
    epochs: int = 400
    batch_size: int | None = None
    dropout_rate: float = 0.0
    shuffle: bool = True
    seed: int = 0
    threshold: float = 0.5
    pos_weight: bool = False

    def __post_init__(self):
        if self.arch not in ARCHITECTURES:
            raise ValueError(f"unknown arch {self.arch!r}, expected one of "
                             f"{ARCHITECTURES}")
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}, expected one of "
                             f"{TASKS}")
        if self.feature_set not in FEATURE_SETS:
            raise ValueError(f"unknown feature set {self.feature_set!r}, "
                             f"expected one of {FEATURE_SETS}")
        if self.arch == "GATV2" and self.feature_set != "P11":
            raise ValueError("GATV2 training requires the P11 feature set")
        if self.batch_size is None:
            object.__setattr__(
                self, "batch_size", DEFAULT_BATCH_SIZES[self.arch])
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")
        if self.learning_rate <= 0.0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be positive")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ValueError(f"dropout rate {self.dropout_rate} outside [0, 1)")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold {self.threshold} outside (0, 1)")

    @property
    def feature_width(self) -> int:
        return FEATURE_WIDTHS[self.feature_set]

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}
