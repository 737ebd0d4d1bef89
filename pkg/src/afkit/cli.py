"""Command-line entry points.

afkit-solve is the competition-style solver: one acceptability query per
invocation, answer printed as a single YES or NO line on standard output,
errors on standard error with a nonzero exit status.

afkit bundles the supporting utilities: feature export, oracle labelling,
model scoring, benchmarking, and random instance generation. These exist
so external tooling (most importantly the trainer) can consume the
pipeline through files and subprocesses instead of linking against it.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import GroundedBaseline, bench_report
from .features import build_embedding
from .framework import FORMATS, load_framework
from .generators import random_framework
from .gnn import forward
from .grounded import TASKS
from .model import load_model
from .oracle import MAX_ORACLE_ARGS, acceptance_labels, labels_text
from .solver import Query, solve
from .validation import FEATURE_SETS

__all__ = ["solve_main", "tools_main"]

_ERRORS = (ValueError, OSError)


def solve_main(argv=None) -> int:
    """ICCMA-style single-query solver."""
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = argparse.ArgumentParser(
        prog="afkit-solve",
        description="Approximate acceptability solver for abstract argumentation.")
    parser.add_argument("-p", dest="task", metavar="TASK",
                        help=f"query task, one of {','.join(TASKS)}")
    parser.add_argument("-f", dest="file", metavar="FILE",
                        help="framework file")
    parser.add_argument("-fo", dest="fmt", metavar="FORMAT", default="iccma23",
                        help=f"file format, one of {','.join(FORMATS)}")
    parser.add_argument("-a", dest="argument", metavar="ARGUMENT",
                        help="query argument (name or 1-based id)")
    parser.add_argument("-m", dest="model", metavar="MODEL",
                        help="model file for the query task")
    parser.add_argument("--timeout", type=float, default=None, metavar="SECONDS",
                        help="soft budget; on expiry the grounded-only answer is used")
    parser.add_argument("--problems", action="store_true",
                        help="list supported tasks and exit")
    parser.add_argument("--formats", action="store_true",
                        help="list supported file formats and exit")
    if not argv:
        parser.print_usage()
        return 0
    ns = parser.parse_args(argv)
    if ns.problems:
        print(",".join(TASKS))
        return 0
    if ns.formats:
        print(",".join(FORMATS))
        return 0
    missing = [flag for flag, value in
               (("-p", ns.task), ("-f", ns.file), ("-a", ns.argument),
                ("-m", ns.model)) if not value]
    if missing:
        print(f"error: missing required flags: {' '.join(missing)}",
              file=sys.stderr)
        return 2
    try:
        answer = solve(Query(task=ns.task, path=ns.file, argument=ns.argument,
                             model_path=ns.model, fmt=ns.fmt,
                             timeout=ns.timeout))
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(answer)
    return 0


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_features(ns) -> int:
    af = load_framework(ns.file, ns.fmt)
    matrix = build_embedding(af, None, ns.layout, ns.seed)
    lines = ["argument," + ",".join(matrix.column_order)]
    for row in range(af.n):
        cells = ",".join(format(v, ".17g") for v in matrix.values[row])
        lines.append(f"{af.name_of(row + 1)},{cells}")
    _write_output("\n".join(lines) + "\n", ns.output)
    return 0


def _cmd_labels(ns) -> int:
    af = load_framework(ns.file, ns.fmt)
    if af.n > MAX_ORACLE_ARGS:
        print(f"error: {ns.file} has {af.n} arguments, oracle guard is "
              f"{MAX_ORACLE_ARGS}", file=sys.stderr)
        return 1
    labels = acceptance_labels(af, ns.task)
    _write_output(labels_text(af, labels), ns.output)
    return 0


def _cmd_score(ns) -> int:
    model = load_model(Path(ns.model).read_bytes())
    af = load_framework(ns.file, ns.fmt)
    matrix = build_embedding(af, None, model.feature_set, model.seed)
    scores = forward(model, matrix, af)
    lines = [f"{af.name_of(arg)} {format(scores[arg - 1], '.17g')}"
             for arg in range(1, af.n + 1)]
    _write_output("\n".join(lines) + "\n", ns.output)
    return 0


def _cmd_bench(ns) -> int:
    if ns.model is None and not ns.baseline:
        print("error: provide -m MODEL or --baseline", file=sys.stderr)
        return 2
    model = None
    if ns.model is not None:
        model = load_model(Path(ns.model).read_bytes())
        if model.task != ns.task:
            print(f"error: model file answers {model.task}, bench asks "
                  f"{ns.task}", file=sys.stderr)
            return 1
    named_dataset = []
    oversized = []
    for file in ns.files:
        af = load_framework(file, ns.fmt)
        if af.n > MAX_ORACLE_ARGS:
            oversized.append(file)
            continue
        named_dataset.append((Path(file).name, af, acceptance_labels(af, ns.task)))
    if oversized:
        print(f"error: instances exceed the {MAX_ORACLE_ARGS}-argument oracle "
              f"guard: {', '.join(oversized)}", file=sys.stderr)
        return 1
    scorer = GroundedBaseline(ns.task) if ns.baseline else model
    report, csv_text = bench_report(named_dataset, scorer, ns.task, model=model)
    _write_output(csv_text, ns.output)
    pos = "absent" if report.pos_acc is None else f"{report.pos_acc:.4f}"
    neg = "absent" if report.neg_acc is None else f"{report.neg_acc:.4f}"
    print(f"instances={len(named_dataset)} macro={report.macro:.4f} "
          f"pos={pos} neg={neg}", file=sys.stderr)
    return 0


def _cmd_random(ns) -> int:
    suffix = "af" if ns.fmt == "iccma23" else "apx"
    for index in range(ns.count):
        af = random_framework(ns.n, ns.attack_prob, ns.seed + index,
                              allow_self_attacks=not ns.no_self_attacks)
        text = af.to_iccma_text() if ns.fmt == "iccma23" else af.to_apx_text()
        if ns.out_dir is None:
            sys.stdout.write(text)
        else:
            out = Path(ns.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{ns.prefix}{index:04d}.{suffix}"
            path.write_text(text, encoding="utf-8")
            print(path)
    return 0


def tools_main(argv=None) -> int:
    """Utility multiplexer; run without arguments for the command list."""
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = argparse.ArgumentParser(
        prog="afkit", description="Argumentation toolkit utilities.")
    sub = parser.add_subparsers(dest="command")

    features = sub.add_parser("features", help="export the embedding matrix as CSV")
    features.add_argument("file")
    features.add_argument("-fo", dest="fmt", default="iccma23", choices=FORMATS)
    features.add_argument("--layout", default="P11", choices=FEATURE_SETS)
    features.add_argument("--seed", type=int, default=0)
    features.add_argument("-o", dest="output", default=None)
    features.set_defaults(run=_cmd_features)

    labels = sub.add_parser("labels", help="exact YES/NO labels from the oracle")
    labels.add_argument("file")
    labels.add_argument("-p", dest="task", required=True, choices=TASKS)
    labels.add_argument("-fo", dest="fmt", default="iccma23", choices=FORMATS)
    labels.add_argument("-o", dest="output", default=None)
    labels.set_defaults(run=_cmd_labels)

    score = sub.add_parser("score", help="per-argument model probabilities")
    score.add_argument("file")
    score.add_argument("-m", dest="model", required=True)
    score.add_argument("-fo", dest="fmt", default="iccma23", choices=FORMATS)
    score.add_argument("-o", dest="output", default=None)
    score.set_defaults(run=_cmd_score)

    bench = sub.add_parser("bench", help="accuracy and timing CSV over instances")
    bench.add_argument("files", nargs="+")
    bench.add_argument("-p", dest="task", required=True, choices=TASKS)
    bench.add_argument("-m", dest="model", default=None)
    bench.add_argument("--baseline", action="store_true",
                       help="score the grounded-only baseline instead of a model")
    bench.add_argument("-fo", dest="fmt", default="iccma23", choices=FORMATS)
    bench.add_argument("-o", dest="output", default=None)
    bench.set_defaults(run=_cmd_bench)

    random_cmd = sub.add_parser("random", help="generate random frameworks")
    random_cmd.add_argument("-n", type=int, required=True)
    random_cmd.add_argument("--attack-prob", type=float, default=0.25)
    random_cmd.add_argument("--seed", type=int, default=0)
    random_cmd.add_argument("--count", type=int, default=1)
    random_cmd.add_argument("--no-self-attacks", action="store_true")
    random_cmd.add_argument("--out-dir", default=None)
    random_cmd.add_argument("--prefix", default="af-")
    random_cmd.add_argument("-fo", dest="fmt", default="iccma23", choices=FORMATS)
    random_cmd.set_defaults(run=_cmd_random)

    if not argv:
        parser.print_usage()
        return 0
    ns = parser.parse_args(argv)
    if ns.command is None:
        parser.print_usage()
        return 0
    try:
        return ns.run(ns)
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
