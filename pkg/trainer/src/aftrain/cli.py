"""Command-line training entry point.

Reads a directory of framework files, has the inference engine export
exact labels and feature matrices for each, trains the requested
architecture, and writes the portable model file.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import ARCHITECTURES, FEATURE_SETS, TASKS, TrainingConfig
from .data import assemble_dataset
from .train import train


def _collect_frame_files(directory: Path, fmt: str) -> list[Path]:
    suffix = ".af" if fmt == "iccma23" else ".apx"
    return sorted(directory.glob(f"*{suffix}"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="afkit-train",
        description="Train an acceptability model and export it in the "
                    "portable format.")
    parser.add_argument("--arch", required=True, choices=ARCHITECTURES)
    parser.add_argument("-p", dest="task", required=True, choices=TASKS)
    parser.add_argument("--instances", required=True,
                        help="directory of framework files")
    parser.add_argument("--out", required=True, help="model file to write")
    parser.add_argument("--work-dir", default=None,
                        help="where exported labels/features are cached "
                             "(default: <instances>/derived)")
    parser.add_argument("--layout", default="P11", choices=FEATURE_SETS)
    parser.add_argument("-fo", dest="fmt", default="iccma23",
                        choices=("iccma23", "apx"))
    parser.add_argument("--lr", type=float, default=0.01)
    parser.add_argument("--epochs", type=int, default=400)
    parser.add_argument("--batch-size", type=int, default=None,
                        help="frameworks per step (default 64 GCN, 4 GATV2)")
    parser.add_argument("--dropout", type=float, default=0.0)
    parser.add_argument("--no-shuffle", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threshold", type=float, default=0.5)
    parser.add_argument("--pos-weight", action="store_true",
                        help="reweight the positive class per instance")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress the per-epoch loss log")
    ns = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.WARNING if ns.quiet else logging.INFO,
        format="%(message)s", stream=sys.stderr)

    try:
        config = TrainingConfig(
            arch=ns.arch, task=ns.task, feature_set=ns.layout,
            learning_rate=ns.lr, epochs=ns.epochs, batch_size=ns.batch_size,
            dropout_rate=ns.dropout, shuffle=not ns.no_shuffle, seed=ns.seed,
            threshold=ns.threshold, pos_weight=ns.pos_weight)
        instance_dir = Path(ns.instances)
        frame_files = _collect_frame_files(instance_dir, ns.fmt)
        if not frame_files:
            print(f"error: no framework files in {instance_dir}",
                  file=sys.stderr)
            return 1
        work_dir = Path(ns.work_dir) if ns.work_dir \
            else instance_dir / "derived"
        dataset = assemble_dataset(
            frame_files, config.task, work_dir, config.feature_set,
            config.seed, ns.fmt, expected_width=config.feature_width)
        result = train(config, dataset)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    Path(ns.out).write_bytes(result.model_bytes)
    print(f"trained on {len(dataset)} instances, final loss "
          f"{result.loss_curve[-1]:.6f}, wrote {ns.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
