"""Training pipeline for portable argument-acceptability models.

This package is the training side of a two-package toolchain. It talks
to the inference engine exclusively through files and subprocesses: it
reads the engine's framework files, label files, and feature CSV
exports, and writes model files in the engine's portable encoding. The
two packages share no code.
"""

from .config import (ARCHITECTURES, DEFAULT_BATCH_SIZES, FEATURE_SETS,
                     FEATURE_WIDTHS, TASKS, TrainingConfig)
from .data import (Instance, assemble_dataset, export_features, export_labels,
                   load_instance, parse_labels, read_features)
from .frames import FORMATS, Frame, load_frame, parse_apx, parse_iccma
from .modelio import decode_array, encode_array, model_file_bytes
from .nets import (GcnNet, Gatv2Net, build_net, neighborhood_mask,
                   predict_probabilities, propagation_tensor,
                   structure_tensor)
from .train import TrainingResult, export_bytes, fit_net, scores_for, train

__version__ = "0.1.0"

__all__ = [
    "ARCHITECTURES", "DEFAULT_BATCH_SIZES", "FEATURE_SETS", "FEATURE_WIDTHS",
    "TASKS", "TrainingConfig",
    "Instance", "assemble_dataset", "export_features", "export_labels",
    "load_instance", "parse_labels", "read_features",
    "FORMATS", "Frame", "load_frame", "parse_apx", "parse_iccma",
    "decode_array", "encode_array", "model_file_bytes",
    "GcnNet", "Gatv2Net", "build_net", "neighborhood_mask",
    "predict_probabilities", "propagation_tensor", "structure_tensor",
    "TrainingResult", "export_bytes", "fit_net", "scores_for", "train",
    "__version__",
]
