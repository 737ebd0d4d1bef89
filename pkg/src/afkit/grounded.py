"""Linear-time grounded labelling and the acceptance shortcut derived from it.

The grounded labelling assigns IN / OUT / UNDEC to every argument: the
IN-set is the unique grounded extension, an argument is OUT when some
attacker is IN, and everything else stays UNDEC.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "IN", "OUT", "UNDEC",
    "GroundedLabelling",
    "grounded_labelling",
    "shortcut_decision",
    "TASKS",
]

TASKS = ("DC-CO", "DC-ST", "DS-PR", "DS-ST")

# Label codes chosen so that (code + 1) / 2 is the {0, 0.5, 1} feature value.
OUT = -1
UNDEC = 0
IN = 1

_LABEL_NAMES = {IN: "IN", OUT: "OUT", UNDEC: "UNDEC"}


@dataclass(frozen=True)
class GroundedLabelling:
    """Per-argument label codes (int8 array indexed by id - 1)."""

    codes: np.ndarray

    def label_of(self, arg: int) -> int:
        return int(self.codes[arg - 1])

    def label_name(self, arg: int) -> str:
        return _LABEL_NAMES[self.label_of(arg)]

    def _ids_with(self, code: int) -> frozenset[int]:
        return frozenset(int(i) + 1 for i in np.flatnonzero(self.codes == code))

    @property
    def in_set(self) -> frozenset[int]:
        return self._ids_with(IN)

    @property
    def out_set(self) -> frozenset[int]:
        return self._ids_with(OUT)

    @property
    def undec_set(self) -> frozenset[int]:
        return self._ids_with(UNDEC)

    def status_feature(self) -> np.ndarray:
        """Grounded status encoded as 1 (IN), 0 (OUT), 0.5 (UNDEC)."""
        return (self.codes.astype(np.float64) + 1.0) / 2.0


def grounded_labelling(af) -> GroundedLabelling:
    """Compute the grounded labelling with a worklist in O(n + |attacks|).

    Each argument keeps a counter of attackers not yet labelled OUT.  An
    argument whose counter reaches zero becomes IN; everything it attacks
    becomes OUT, which in turn decrements the counters of the OUT argument's
    targets.  Counters are touched once per edge, so the total work is linear.
    """
    n = af.n
    labels = [UNDEC] * n
    pending = [len(af.attackers_of(i + 1)) for i in range(n)]
    queue = deque(i for i in range(n) if pending[i] == 0)
    while queue:
        a = queue.popleft()
        if labels[a] != UNDEC:
            continue
        labels[a] = IN
        for t in af.targets_of(a + 1):
            t -= 1
            if labels[t] != UNDEC:
                continue
            labels[t] = OUT
            for u in af.targets_of(t + 1):
                u -= 1
                pending[u] -= 1
                if pending[u] == 0 and labels[u] == UNDEC:
                    queue.append(u)
    return GroundedLabelling(np.array(labels, dtype=np.int8))


def shortcut_decision(labelling: GroundedLabelling, arg: int, task: str):
    """Decide an acceptability query from the grounded labelling alone.

    IN means YES and OUT means NO for all four tasks; UNDEC gives no decision
    (returns None) and the caller falls through to model inference.

    IN=>YES is exact for DC-CO, DS-PR and DS-ST, and OUT=>NO is exact for
    DC-CO, DC-ST and DS-PR.  The remaining stable-semantics cases (DC-ST on
    IN, DS-ST on OUT) are approximate: they give the wrong answer exactly
    when the framework has no stable extension.
    """
    if task not in TASKS:
        raise ValueError(f"unsupported task {task!r}; expected one of {TASKS}")
    code = labelling.label_of(arg)
    if code == IN:
        return True
    if code == OUT:
        return False
    return None
