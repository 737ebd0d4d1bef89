"""Reading argumentation-framework files in the two interchange formats.

The trainer never links against the inference engine; these parsers read
the same on-disk formats the engine consumes, which is the shared
contract between the two packages.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

FORMATS = ("iccma23", "apx")

_APX_ARG = re.compile(r"^arg\(\s*([A-Za-z0-9_]+)\s*\)\.$")
_APX_ATT = re.compile(r"^att\(\s*([A-Za-z0-9_]+)\s*,\s*([A-Za-z0-9_]+)\s*\)\.$")


@dataclass(frozen=True)
class Frame:
    """A directed attack graph with 1-based argument ids and display names."""

    n: int
    attacks: tuple[tuple[int, int], ...]
    names: tuple[str, ...]

    def index_of(self, name: str) -> int:
        return self.names.index(name) + 1


def parse_iccma(text: str) -> Frame:
    n = None
    attacks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("p "):
            parts = line.split()
            if n is not None or len(parts) != 3 or parts[1] != "af":
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            n = int(parts[2])
            continue
        if n is None:
            raise ValueError(f"line {lineno}: attack before the header")
        a, b = line.split()
        attacks.append((int(a), int(b)))
    if n is None:
        raise ValueError("missing problem header")
    for a, b in attacks:
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"attack ({a}, {b}) outside 1..{n}")
    return Frame(n, tuple(dict.fromkeys(attacks)),
                 tuple(str(i) for i in range(1, n + 1)))


def parse_apx(text: str) -> Frame:
    names: list[str] = []
    seen: dict[str, int] = {}
    attacks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        arg = _APX_ARG.match(line)
        if arg:
            name = arg.group(1)
            if name not in seen:
                seen[name] = len(names) + 1
                names.append(name)
            continue
        att = _APX_ATT.match(line)
        if att:
            first, second = att.group(1), att.group(2)
            for name in (first, second):
                if name not in seen:
                    raise ValueError(
                        f"line {lineno}: undeclared argument {name!r}")
            attacks.append((seen[first], seen[second]))
            continue
        raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    return Frame(len(names), tuple(dict.fromkeys(attacks)), tuple(names))


def load_frame(path: str | Path, fmt: str = "iccma23") -> Frame:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    text = Path(path).read_text(encoding="utf-8")
    return parse_iccma(text) if fmt == "iccma23" else parse_apx(text)
