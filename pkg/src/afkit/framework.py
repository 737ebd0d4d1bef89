"""Argumentation framework data model and parsers for the ICCMA'23 and APX text formats.

An argumentation framework (AF) is a finite directed graph whose nodes are
arguments and whose edges are attacks.  Arguments are identified externally by
1-based integer ids (ICCMA'23) or by names (APX); internally everything is
dense 0-based offsets.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

__all__ = [
    "ArgumentationFramework",
    "ParseError",
    "parse_iccma",
    "parse_apx",
    "load_framework",
    "degrees",
    "FORMATS",
]

FORMATS = ("iccma23", "apx")


class ParseError(ValueError):
    """Malformed AF input.  Carries the 1-based line number of the offence."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ArgumentationFramework:
    """Immutable directed attack graph over arguments 1..n.

    Duplicate attack pairs collapse to a single edge.  Forward and backward
    adjacency are built once at construction; memory stays linear in
    n + |attacks| (there is deliberately no adjacency matrix).
    """

    __slots__ = ("n", "attacks", "_attackers", "_targets", "_names",
                 "_name_to_id", "_edges", "_in_deg", "_out_deg")

    def __init__(self, n: int, attacks=(), names=None):
        if n < 1:
            raise ValueError(f"argument count must be positive, got {n}")
        if names is not None:
            names = tuple(names)
            if len(names) != n:
                raise ValueError(f"{len(names)} names for {n} arguments")
            if len(set(names)) != n:
                raise ValueError("argument names must be unique")
        seen: set[tuple[int, int]] = set()
        ordered: list[tuple[int, int]] = []
        attackers: list[list[int]] = [[] for _ in range(n)]
        targets: list[list[int]] = [[] for _ in range(n)]
        for pair in attacks:
            a, b = pair
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"attack ({a},{b}) out of range 1..{n}")
            if (a, b) in seen:
                continue
            seen.add((a, b))
            ordered.append((a, b))
            targets[a - 1].append(b)
            attackers[b - 1].append(a)
        self.n = n
        self.attacks = tuple(ordered)
        self._attackers = tuple(tuple(xs) for xs in attackers)
        self._targets = tuple(tuple(xs) for xs in targets)
        self._names = names
        self._name_to_id = (
            {name: i + 1 for i, name in enumerate(names)} if names else None
        )
        edges = np.array(ordered, dtype=np.int32).reshape(-1, 2) - 1
        self._edges = edges
        self._in_deg = np.bincount(edges[:, 1], minlength=n).astype(np.int64)
        self._out_deg = np.bincount(edges[:, 0], minlength=n).astype(np.int64)

    # -- structure ---------------------------------------------------------

    def attackers_of(self, arg: int) -> tuple[int, ...]:
        """Arguments attacking `arg` (1-based ids)."""
        return self._attackers[arg - 1]

    def targets_of(self, arg: int) -> tuple[int, ...]:
        """Arguments attacked by `arg` (1-based ids)."""
        return self._targets[arg - 1]

    @property
    def edge_array(self) -> np.ndarray:
        """Deduplicated attacks as a (m, 2) int32 array of 0-based offsets."""
        return self._edges

    @property
    def in_degrees(self) -> np.ndarray:
        return self._in_deg

    @property
    def out_degrees(self) -> np.ndarray:
        return self._out_deg

    # -- naming ------------------------------------------------------------

    @property
    def names(self):
        """Argument names in id order, or None when the input had no names."""
        return self._names

    def name_of(self, arg: int) -> str:
        if self._names is not None:
            return self._names[arg - 1]
        return str(arg)

    def resolve(self, token: str) -> int:
        """Map an external argument token (name or decimal id) to its id."""
        if self._name_to_id is not None and token in self._name_to_id:
            return self._name_to_id[token]
        try:
            arg = int(token)
        except ValueError:
            raise ValueError(f"unknown argument {token!r}") from None
        if not 1 <= arg <= self.n:
            raise ValueError(f"argument id {arg} out of range 1..{self.n}")
        return arg

    # -- serialization -----------------------------------------------------

    def to_iccma_text(self) -> str:
        lines = [f"p af {self.n}"]
        lines.extend(f"{a} {b}" for a, b in self.attacks)
        return "\n".join(lines) + "\n"

    def to_apx_text(self) -> str:
        lines = [f"arg({self.name_of(i)})." for i in range(1, self.n + 1)]
        lines.extend(f"att({self.name_of(a)},{self.name_of(b)})."
                     for a, b in self.attacks)
        return "\n".join(lines) + "\n"

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArgumentationFramework):
            return NotImplemented
        return self.n == other.n and set(self.attacks) == set(other.attacks)

    def __repr__(self) -> str:
        return (f"ArgumentationFramework(n={self.n}, "
                f"attacks={len(self.attacks)})")


def degrees(af: ArgumentationFramework) -> tuple[np.ndarray, np.ndarray]:
    """Per-argument (in_degree, out_degree) arrays, indexed by id - 1."""
    return af.in_degrees, af.out_degrees


def _decode(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"undecodable input: {exc}") from None
    return data


def parse_iccma(data) -> ArgumentationFramework:
    """Parse the ICCMA'23 text format.

    Single pass over the lines: one `p af <n>` header, then attack lines
    `<i> <j>` with 1-based ids.  Comment lines start with `#`; blank lines
    are tolerated anywhere.  Attack lines before the header are rejected.
    """
    n = None
    attacks: list[tuple[int, int]] = []
    for lineno, raw in enumerate(_decode(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise ParseError(lineno, "duplicate 'p af' header")
            if len(tokens) != 3 or tokens[1] != "af":
                raise ParseError(lineno, f"malformed header {line!r}")
            try:
                n = int(tokens[2])
            except ValueError:
                raise ParseError(
                    lineno, f"argument count {tokens[2]!r} is not an integer"
                ) from None
            if n < 1:
                raise ParseError(lineno, f"argument count must be positive, got {n}")
            continue
        if n is None:
            raise ParseError(lineno, "attack line before 'p af' header")
        if len(tokens) != 2:
            raise ParseError(
                lineno, f"attack line needs exactly 2 tokens, got {len(tokens)}"
            )
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {line!r}") from None
        if not 1 <= a <= n:
            raise ParseError(lineno, f"argument id {a} out of range 1..{n}")
        if not 1 <= b <= n:
            raise ParseError(lineno, f"argument id {b} out of range 1..{n}")
        attacks.append((a, b))
    if n is None:
        raise ParseError(0, "missing 'p af' header")
    return ArgumentationFramework(n, attacks)


_APX_ARG = re.compile(r"arg\s*\(\s*([^(),\s]+)\s*\)\s*\.", re.ASCII)
_APX_ATT = re.compile(
    r"att\s*\(\s*([^(),\s]+)\s*,\s*([^(),\s]+)\s*\)\s*\.", re.ASCII)


def parse_apx(data) -> ArgumentationFramework:
    """Parse the APX format: `arg(<name>).` and `att(<x>,<y>).` lines.

    Names are mapped to ids 1..n in order of first declaration and retained
    for output.  An `att` referencing an undeclared name is an error, so
    declarations must precede use.
    """
    name_to_id: dict[str, int] = {}
    names: list[str] = []
    attacks: list[tuple[int, int]] = []
    for lineno, raw in enumerate(_decode(data).splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        m = _APX_ARG.fullmatch(line)
        if m:
            name = m.group(1)
            if name not in name_to_id:
                name_to_id[name] = len(names) + 1
                names.append(name)
            continue
        m = _APX_ATT.fullmatch(line)
        if m:
            x, y = m.group(1), m.group(2)
            for name in (x, y):
                if name not in name_to_id:
                    raise ParseError(lineno, f"undeclared argument {name!r}")
            attacks.append((name_to_id[x], name_to_id[y]))
            continue
        raise ParseError(lineno, f"malformed line {line!r}")
    if not names:
        raise ParseError(0, "no arguments declared")
    return ArgumentationFramework(len(names), attacks, names=names)


def load_framework(path, fmt: str = "iccma23") -> ArgumentationFramework:
    """Read and parse an AF file in the given format."""
    data = Path(path).read_bytes()
    if fmt == "iccma23":
        return parse_iccma(data)
    if fmt == "apx":
        return parse_apx(data)
    raise ValueError(f"unsupported format {fmt!r}; expected one of {FORMATS}")
