"""Input validation helpers shared by the estimator-style interfaces."""

from __future__ import annotations

import numpy as np

from .framework import ArgumentationFramework
from .grounded import TASKS

__all__ = ["check_framework", "check_argument", "check_task",
           "check_feature_set", "FEATURE_SETS", "FEATURE_WIDTHS"]

FEATURE_SETS = ("P11", "P128")
FEATURE_WIDTHS = {"P11": 11, "P128": 128}


def check_framework(af) -> ArgumentationFramework:
    if not isinstance(af, ArgumentationFramework):
        raise TypeError(
            f"expected an ArgumentationFramework, got {type(af).__name__}")
    return af


def check_argument(af, arg: int) -> int:
    arg = int(arg)
    if not 1 <= arg <= af.n:
        raise ValueError(f"argument id {arg} out of range 1..{af.n}")
    return arg


def check_task(task: str) -> str:
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}, expected one of {TASKS}")
    return task


def check_feature_set(feature_set: str) -> str:
    if feature_set not in FEATURE_SETS:
        raise ValueError(
            f"unknown feature set {feature_set!r}, expected one of {FEATURE_SETS}")
    return feature_set


def check_features(values, n: int, width: int) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError(f"feature matrix must be 2-d, got shape {values.shape}")
    if values.shape != (n, width):
        raise ValueError(
            f"feature matrix shape {values.shape} does not match expected ({n}, {width})")
    return values
