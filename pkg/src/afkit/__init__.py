"""Approximate acceptability solving for abstract argumentation.

The toolkit answers credulous and skeptical acceptance queries with a
three-stage pipeline: an exact linear-time grounded labelling that settles
most arguments outright, a feature extractor mixing graph measures with
gradual-semantics degrees, and a graph neural model (residual GCN or
GATV2) scoring the arguments the labelling leaves undecided. A brute-force
oracle provides exact ground truth on small frameworks, and a benchmark
harness measures accuracy and stage timings.
"""

from .bench import (AccuracyReport, GroundedBaseline, bench_report,
                    count_solved, evaluate, time_pipeline)
from .cli import solve_main, tools_main
from .features import (EmbeddingBuilder, FeatureMatrix, P11_COLUMNS,
                       P128_COLUMNS, build_embedding, closeness_centrality,
                       eigenvector_centrality, greedy_coloring, pagerank,
                       random_feature_columns)
from .framework import (FORMATS, ArgumentationFramework, ParseError,
                        load_framework, parse_apx, parse_iccma)
from .generators import chain_framework, random_framework
from .gnn import (AcceptabilityPredictor, attention_coefficients, forward,
                  gat_head, gatv2_forward, gcn_forward, gcn_layer,
                  propagation_matrix)
from .gradual import DegreeVector, cbs, hcat, mbs, nsa
from .grounded import (GroundedLabelling, TASKS, grounded_labelling,
                       shortcut_decision)
from .model import (GnnModel, LayerSpec, ModelFormatError, load_model,
                    random_gatv2_model, random_gcn_model, save_model,
                    validate_model)
from .oracle import (MAX_ORACLE_ARGS, acceptance_labels, acceptance_set,
                     credulous, extensions, label_dataset, oracle_decision,
                     skeptical)
from .solver import Query, SolverPipeline, StageTimings, UNDEC_FALLBACK, solve
from .validation import FEATURE_SETS

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport", "GroundedBaseline", "bench_report", "count_solved",
    "evaluate", "time_pipeline",
    "solve_main", "tools_main",
    "EmbeddingBuilder", "FeatureMatrix", "P11_COLUMNS", "P128_COLUMNS",
    "build_embedding", "closeness_centrality", "eigenvector_centrality",
    "greedy_coloring", "pagerank", "random_feature_columns",
    "FORMATS", "ArgumentationFramework", "ParseError", "load_framework",
    "parse_apx", "parse_iccma",
    "chain_framework", "random_framework",
    "AcceptabilityPredictor", "attention_coefficients", "forward",
    "gat_head", "gatv2_forward", "gcn_forward", "gcn_layer",
    "propagation_matrix",
    "DegreeVector", "cbs", "hcat", "mbs", "nsa",
    "GroundedLabelling", "TASKS", "grounded_labelling", "shortcut_decision",
    "GnnModel", "LayerSpec", "ModelFormatError", "load_model",
    "random_gatv2_model", "random_gcn_model", "save_model", "validate_model",
    "MAX_ORACLE_ARGS", "acceptance_labels", "acceptance_set", "credulous",
    "extensions", "label_dataset", "oracle_decision", "skeptical",
    "Query", "SolverPipeline", "StageTimings", "UNDEC_FALLBACK", "solve",
    "FEATURE_SETS",
    "__version__",
]
