"""Exact acceptance oracle by exhaustive subset enumeration.

Subsets are encoded as bitmasks and all 2^n candidates are tested at once
with vectorized integer arithmetic, so the oracle stays usable up to the
hard cap of 22 arguments. It exists to validate the approximate solver and
to label training data, not to compete with real enumeration solvers.

Conventions: extensions are reported as frozensets of 1-based argument ids;
when a semantics admits no extension (possible only for stable), skeptical
acceptance is all arguments and credulous acceptance is none.
"""

from __future__ import annotations

import numpy as np

from .grounded import TASKS

__all__ = ["MAX_ORACLE_ARGS", "SEMANTICS", "extensions", "credulous",
           "skeptical", "acceptance_set", "acceptance_labels",
           "oracle_decision", "label_dataset", "labels_text", "parse_labels"]

MAX_ORACLE_ARGS = 22
SEMANTICS = ("co", "pr", "st", "gr")


def _extension_masks(af, semantics: str) -> list[int]:
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}, expected one of {SEMANTICS}")
    if af.n > MAX_ORACLE_ARGS:
        raise ValueError(
            f"oracle supports at most {MAX_ORACLE_ARGS} arguments, got {af.n}")

    n = af.n
    attack_out = np.zeros(n, dtype=np.int64)
    attack_in = np.zeros(n, dtype=np.int64)
    for src, tgt in af.attacks:
        attack_out[src - 1] |= 1 << (tgt - 1)
        attack_in[tgt - 1] |= 1 << (src - 1)

    masks = np.arange(1 << n, dtype=np.int64)
    attacked = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        member = (masks >> i) & 1 == 1
        attacked[member] |= attack_out[i]

    conflict_free = masks & attacked == 0

    # defended[S] bit i set iff S counterattacks every attacker of i
    defended = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        defended[attack_in[i] & ~attacked == 0] |= 1 << i

    admissible = conflict_free & (masks & ~defended == 0)

    if semantics == "st":
        full = (1 << n) - 1
        keep = conflict_free & (masks | attacked == full)
        return [int(m) for m in masks[keep]]

    complete = admissible & (defended & ~masks == 0)
    complete_masks = masks[complete]

    if semantics == "co":
        return [int(m) for m in complete_masks]
    if semantics == "gr":
        return [int(np.bitwise_and.reduce(complete_masks))]

    # preferred: subset-maximal complete sets
    candidates = [int(m) for m in complete_masks]
    return [m for m in candidates
            if not any(m != other and m & ~other == 0 for other in candidates)]


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def extensions(af, semantics: str) -> list[frozenset[int]]:
    """All extensions under the given semantics, sorted by bitmask value."""
    return [_mask_to_set(m) for m in sorted(_extension_masks(af, semantics))]


def credulous(af, semantics: str) -> frozenset[int]:
    """Arguments contained in at least one extension."""
    union = 0
    for m in _extension_masks(af, semantics):
        union |= m
    return _mask_to_set(union)


def skeptical(af, semantics: str) -> frozenset[int]:
    """Arguments contained in every extension (all of them if none exist)."""
    masks = _extension_masks(af, semantics)
    if not masks:
        return frozenset(range(1, af.n + 1))
    inter = (1 << af.n) - 1
    for m in masks:
        inter &= m
    return _mask_to_set(inter)


def acceptance_set(af, task: str) -> frozenset[int]:
    """All arguments whose answer under the task is YES."""
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}, expected one of {TASKS}")
    if task == "DC-CO":
        return credulous(af, "co")
    if task == "DC-ST":
        return credulous(af, "st")
    if task == "DS-PR":
        return skeptical(af, "pr")
    return skeptical(af, "st")


def oracle_decision(af, arg: int, task: str) -> bool:
    """Ground-truth answer for one acceptability query."""
    if not 1 <= arg <= af.n:
        raise ValueError(f"argument id {arg} out of range 1..{af.n}")
    return arg in acceptance_set(af, task)


def acceptance_labels(af, task: str) -> np.ndarray:
    """Boolean YES labels for every argument, in id order."""
    accepted = acceptance_set(af, task)
    return np.array([arg in accepted for arg in range(1, af.n + 1)], dtype=bool)


def label_dataset(afs, task: str) -> list[np.ndarray]:
    """Label a whole list of frameworks, rejecting oversized ones up front."""
    oversized = [index for index, af in enumerate(afs) if af.n > MAX_ORACLE_ARGS]
    if oversized:
        raise ValueError(
            f"instances at positions {oversized} exceed the "
            f"{MAX_ORACLE_ARGS}-argument oracle guard")
    return [acceptance_labels(af, task) for af in afs]


def labels_text(af, labels) -> str:
    """Render labels in the one-line-per-argument YES/NO exchange format."""
    lines = [f"{af.name_of(arg)} {'YES' if labels[arg - 1] else 'NO'}"
             for arg in range(1, af.n + 1)]
    return "\n".join(lines) + "\n"


def parse_labels(text: str, af) -> np.ndarray:
    """Read the YES/NO exchange format back into a boolean array."""
    labels = np.zeros(af.n, dtype=bool)
    seen = np.zeros(af.n, dtype=bool)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("YES", "NO"):
            raise ValueError(
                f"line {lineno}: expected '<argument> <YES|NO>', got {raw!r}")
        arg = af.resolve(parts[0])
        if seen[arg - 1]:
            raise ValueError(f"line {lineno}: duplicate label for {parts[0]}")
        seen[arg - 1] = True
        labels[arg - 1] = parts[1] == "YES"
    if not np.all(seen):
        missing = [af.name_of(arg) for arg in range(1, af.n + 1)
                   if not seen[arg - 1]]
        raise ValueError(f"missing labels for arguments: {', '.join(missing)}")
    return labels
