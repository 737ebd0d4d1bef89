"""End-to-end query pipeline: parse, grounded shortcut, features, model.

The grounded labelling is computed first. A query argument labelled IN or
OUT is answered immediately; only UNDEC arguments pay for feature
construction and a model forward pass, and the instrumentation counters
make that observable. A soft time budget can force the grounded-only
fallback answer for UNDEC arguments (NO for DC-CO, DC-ST, and DS-PR, YES
for DS-ST); the budget is checked between stages, never mid-computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from time import perf_counter

from .features import EmbeddingBuilder
from .framework import load_framework
from .gnn import forward
from .grounded import grounded_labelling, shortcut_decision
from .model import GnnModel, load_model, validate_model
from .validation import check_argument, check_framework, check_task

__all__ = ["Query", "StageTimings", "SolverPipeline", "solve",
           "UNDEC_FALLBACK"]

UNDEC_FALLBACK = {"DC-CO": False, "DC-ST": False, "DS-PR": False, "DS-ST": True}


@dataclass(frozen=True)
class Query:
    """One acceptability question against one framework file."""

    task: str
    path: str
    argument: str
    model_path: str
    fmt: str = "iccma23"
    timeout: float | None = None


@dataclass
class StageTimings:
    """Wall-clock milliseconds per pipeline stage; 0 for skipped stages."""

    parse_ms: float = 0.0
    grounded_ms: float = 0.0
    features_ms: float = 0.0
    infer_ms: float = 0.0


class SolverPipeline:
    """Reusable decision pipeline bound to one loaded model.

    After each decide call, last_timings holds the per-stage wall clock and
    counters accumulates how often each path was taken.
    """

    def __init__(self, model: GnnModel):
        validate_model(model)
        self.model = model
        self.counters = {"shortcut_decided": 0, "features_built": 0,
                         "model_runs": 0, "timeout_fallbacks": 0}
        self.last_timings = StageTimings()

    def decide(self, af, arg: int, task: str | None = None,
               time_budget: float | None = None) -> bool:
        """Answer one query; True means YES."""
        check_framework(af)
        arg = check_argument(af, arg)
        task = self.model.task if task is None else check_task(task)
        if task != self.model.task:
            raise ValueError(
                f"model answers {self.model.task}, cannot answer {task}")
        start = perf_counter()
        deadline = None if time_budget is None else start + time_budget
        self.last_timings = timings = StageTimings()

        labelling = grounded_labelling(af)
        timings.grounded_ms = (perf_counter() - start) * 1000.0
        decision = shortcut_decision(labelling, arg, task)
        if decision is not None:
            self.counters["shortcut_decided"] += 1
            return decision
        if deadline is not None and perf_counter() > deadline:
            self.counters["timeout_fallbacks"] += 1
            return UNDEC_FALLBACK[task]

        stage = perf_counter()
        features = EmbeddingBuilder(self.model.feature_set,
                                    self.model.seed).build(af, labelling)
        timings.features_ms = (perf_counter() - stage) * 1000.0
        self.counters["features_built"] += 1
        if deadline is not None and perf_counter() > deadline:
            self.counters["timeout_fallbacks"] += 1
            return UNDEC_FALLBACK[task]

        stage = perf_counter()
        scores = forward(self.model, features, af)
        timings.infer_ms = (perf_counter() - stage) * 1000.0
        self.counters["model_runs"] += 1
        return bool(scores[arg - 1] >= self.model.threshold)


def solve(query: Query) -> str:
    """Resolve a file-level query to the printed answer text."""
    check_task(query.task)
    model = load_model(Path(query.model_path).read_bytes())
    if model.task != query.task:
        raise ValueError(
            f"model file answers {model.task}, query asks {query.task}")
    start = perf_counter()
    af = load_framework(query.path, query.fmt)
    parse_ms = (perf_counter() - start) * 1000.0
    arg = af.resolve(query.argument)
    pipeline = SolverPipeline(model)
    answer = pipeline.decide(af, arg, query.task, query.timeout)
    pipeline.last_timings.parse_ms = parse_ms
    return "YES" if answer else "NO"
