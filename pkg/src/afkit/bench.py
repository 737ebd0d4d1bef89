"""Accuracy and runtime benchmarking for acceptability predictors.

Accuracy follows the per-instance convention: an instance's score is the
fraction of its arguments predicted correctly, and the headline number is
the unweighted mean of those fractions across instances. Restricted scores
redo the count over YES-labeled or NO-labeled arguments only; an instance
with an empty restriction contributes nothing to that restricted mean.

A scorer is anything callable as scorer(af) returning one boolean YES/NO
prediction per argument; a loaded model is wrapped automatically.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter

import numpy as np

from .features import build_embedding
from .framework import parse_iccma
from .gnn import AcceptabilityPredictor, forward
from .grounded import IN, OUT, grounded_labelling
from .model import GnnModel
from .solver import UNDEC_FALLBACK
from .validation import check_task

__all__ = ["AccuracyReport", "GroundedBaseline", "evaluate", "count_solved",
           "time_pipeline", "bench_report", "STAGES", "CSV_HEADER",
           "CSV_SCHEMA_VERSION"]

STAGES = ("parse", "grounded", "features", "infer")
CSV_SCHEMA_VERSION = 1
CSV_HEADER = ("instance,task,n_args,theta,pos_acc,neg_acc,"
              "parse_ms,grounded_ms,features_ms,infer_ms")


@dataclass(frozen=True)
class AccuracyReport:
    """Per-instance and aggregated accuracy plus forward-pass wall clock."""

    task: str
    thetas: tuple[float, ...]
    pos_accs: tuple[float | None, ...]
    neg_accs: tuple[float | None, ...]
    forward_ms: tuple[float, ...]

    @property
    def macro(self) -> float:
        return float(np.mean(self.thetas))

    @property
    def pos_acc(self) -> float | None:
        present = [x for x in self.pos_accs if x is not None]
        return float(np.mean(present)) if present else None

    @property
    def neg_acc(self) -> float | None:
        present = [x for x in self.neg_accs if x is not None]
        return float(np.mean(present)) if present else None

    @property
    def total_ms(self) -> float:
        return float(np.sum(self.forward_ms))


class GroundedBaseline:
    """Task-aware grounded-only scorer: IN is YES, OUT is NO, UNDEC falls
    back to the task's default answer."""

    def __init__(self, task: str):
        self.task = check_task(task)

    def __call__(self, af) -> np.ndarray:
        codes = grounded_labelling(af).codes
        out = np.full(af.n, UNDEC_FALLBACK[self.task])
        out[codes == IN] = True
        out[codes == OUT] = False
        return out


def _as_scorer(model_or_scorer):
    if isinstance(model_or_scorer, GnnModel):
        return AcceptabilityPredictor(model_or_scorer).predict
    if callable(model_or_scorer):
        return model_or_scorer
    raise TypeError(
        f"expected a model or a callable scorer, got {type(model_or_scorer).__name__}")


def _restricted(correct: np.ndarray, mask: np.ndarray) -> float | None:
    if not np.any(mask):
        return None
    return float(np.mean(correct[mask]))


def evaluate(model_or_scorer, dataset, task: str) -> AccuracyReport:
    """Score every argument of every (framework, labels) pair."""
    check_task(task)
    scorer = _as_scorer(model_or_scorer)
    thetas, pos_accs, neg_accs, forward_ms = [], [], [], []
    for af, labels in dataset:
        labels = np.asarray(labels, dtype=bool)
        if labels.shape != (af.n,):
            raise ValueError(
                f"labels shape {labels.shape} does not match {af.n} arguments")
        start = perf_counter()
        predictions = np.asarray(scorer(af), dtype=bool)
        forward_ms.append((perf_counter() - start) * 1000.0)
        if predictions.shape != (af.n,):
            raise ValueError(
                f"scorer returned shape {predictions.shape} for {af.n} arguments")
        correct = predictions == labels
        thetas.append(float(np.mean(correct)))
        pos_accs.append(_restricted(correct, labels))
        neg_accs.append(_restricted(correct, ~labels))
    return AccuracyReport(task, tuple(thetas), tuple(pos_accs),
                          tuple(neg_accs), tuple(forward_ms))


def count_solved(model_or_scorer, queries) -> int:
    """Single-query mode: how many (af, argument, expected) triples match."""
    scorer = _as_scorer(model_or_scorer)
    solved = 0
    for af, arg, expected in queries:
        predictions = np.asarray(scorer(af), dtype=bool)
        if bool(predictions[arg - 1]) == bool(expected):
            solved += 1
    return solved


def time_pipeline(instances, model: GnnModel | None = None,
                  stages=()) -> list[dict]:
    """Wall-clock milliseconds per stage for each (name, framework) pair.

    stages filters which of parse, grounded, features, infer are measured;
    an empty filter measures all of them. Unmeasured stages report 0. The
    infer stage needs a model and reports 0 without one.
    """
    selected = tuple(stages) or STAGES
    for stage in selected:
        if stage not in STAGES:
            raise ValueError(f"unknown stage {stage!r}, expected one of {STAGES}")
    feature_set = model.feature_set if model is not None else "P11"
    seed = model.seed if model is not None else 0
    rows = []
    for name, af in instances:
        row = {"instance": name, "n_args": af.n}
        for stage in STAGES:
            row[f"{stage}_ms"] = 0.0
        if "parse" in selected:
            text = af.to_iccma_text()
            start = perf_counter()
            parse_iccma(text)
            row["parse_ms"] = (perf_counter() - start) * 1000.0
        if "grounded" in selected:
            start = perf_counter()
            grounded_labelling(af)
            row["grounded_ms"] = (perf_counter() - start) * 1000.0
        features = None
        if "features" in selected:
            start = perf_counter()
            features = build_embedding(af, None, feature_set, seed)
            row["features_ms"] = (perf_counter() - start) * 1000.0
        if "infer" in selected and model is not None:
            if features is None:
                features = build_embedding(af, None, feature_set, seed)
            start = perf_counter()
            forward(model, features, af)
            row["infer_ms"] = (perf_counter() - start) * 1000.0
        rows.append(row)
    return rows


def _csv_cell(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def bench_report(named_dataset, model_or_scorer, task: str,
                 model: GnnModel | None = None):
    """Full benchmark: accuracy report plus the versioned CSV text.

    named_dataset is a list of (name, framework, labels). The CSV carries
    one row per instance in input order under the fixed schema header.
    """
    if model is None and isinstance(model_or_scorer, GnnModel):
        model = model_or_scorer
    dataset = [(af, labels) for _, af, labels in named_dataset]
    report = evaluate(model_or_scorer, dataset, task)
    rows = time_pipeline([(name, af) for name, af, _ in named_dataset], model)
    lines = [CSV_HEADER]
    for index, timing in enumerate(rows):
        lines.append(",".join([
            str(timing["instance"]), task, str(timing["n_args"]),
            f"{report.thetas[index]:.6f}",
            _csv_cell(report.pos_accs[index]),
            _csv_cell(report.neg_accs[index]),
            f"{timing['parse_ms']:.3f}", f"{timing['grounded_ms']:.3f}",
            f"{timing['features_ms']:.3f}", f"{timing['infer_ms']:.3f}"]))
    return report, "\n".join(lines) + "\n"
