"""±1 sequences and their discrepancy over homogeneous arithmetic progressions."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional


class SequenceParseError(ValueError):
    """Raised when sequence text contains something other than '+', '-' or whitespace."""

    def __init__(self, position: int, char: str, line: int, column: int):
        self.position = position
        self.char = char
        self.line = line
        self.column = column
        super().__init__(
            f"unexpected character {char!r} at offset {position} (line {line}, column {column})"
        )


@dataclass(frozen=True)
class Sequence:
    """Immutable ±1 word. Indexing through :meth:`x` is 1-based."""

    elements: tuple[int, ...] = ()

    def __post_init__(self):
        elements = tuple(self.elements)
        for pos, v in enumerate(elements, start=1):
            if v != 1 and v != -1:
                raise ValueError(f"x_{pos} = {v!r}; elements must be +1 or -1")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def of(cls, values: Iterable[int]) -> "Sequence":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def x(self, i: int) -> int:
        if not 1 <= i <= len(self.elements):
            raise IndexError(f"x_{i} out of range 1..{len(self.elements)}")
        return self.elements[i - 1]

    def prefix(self, n: int) -> "Sequence":
        return Sequence(self.elements[:n])

    def subsequence(self, d: int) -> "Sequence":
        """The homogeneous subsequence x_d, x_2d, ..., x_kd with k = floor(l/d)."""
        if d < 1:
            raise ValueError(f"step d must be positive, got {d}")
        return Sequence(self.elements[d - 1 :: d])

    def __str__(self) -> str:
        return format_sequence(self)


@dataclass(frozen=True)
class DiscrepancyReport:
    value: int
    witness_d: Optional[int] = None
    witness_k: Optional[int] = None


def parse_sequence(text: str) -> Sequence:
    """Read '+'/'-' symbols, ignoring all whitespace."""
    values = []
    line, col = 1, 0
    for pos, ch in enumerate(text):
        col += 1
        if ch == "+":
            values.append(1)
        elif ch == "-":
            values.append(-1)
        elif ch == "\n":
            line, col = line + 1, 0
        elif not ch.isspace():
            raise SequenceParseError(pos, ch, line, col)
    return Sequence(tuple(values))


def format_sequence(seq: Sequence, per_line: int = 30) -> str:
    """Render as space separated symbols, ``per_line`` symbols per line."""
    symbols = ["+" if v > 0 else "-" for v in seq.elements]
    if not symbols:
        return ""
    rows = [" ".join(symbols[i : i + per_line]) for i in range(0, len(symbols), per_line)]
    return "\n".join(rows) + "\n"


def partial_sums(seq: Sequence, d: int) -> list[int]:
    """Running sums S_1..S_K of x_d, x_2d, ..., x_Kd where K = floor(l/d)."""
    l = len(seq)
    if not 1 <= d <= l:
        raise ValueError(f"step d={d} out of range 1..{l}")
    out = []
    s = 0
    for v in seq.elements[d - 1 :: d]:
        s += v
        out.append(s)
    return out


def discrepancy(seq: Sequence) -> DiscrepancyReport:
    """Maximum |S_k(d)| over all d and k, with the smallest (d, k) as witness."""
    elems = seq.elements
    best, best_d, best_k = 0, None, None
    for d in range(1, len(elems) + 1):
        s = 0
        for k, v in enumerate(elems[d - 1 :: d], start=1):
            s += v
            if abs(s) > best:
                best, best_d, best_k = abs(s), d, k
    return DiscrepancyReport(best, best_d, best_k)


def prefix_discrepancies(seq: Sequence) -> list[int]:
    """Discrepancy of every prefix x_1..x_n, n = 0..l, in a single pass.

    Position n only touches the sums S(d) with d dividing n.
    """
    l = len(seq)
    divisors: list[list[int]] = [[] for _ in range(l + 1)]
    for d in range(1, l + 1):
        for m in range(d, l + 1, d):
            divisors[m].append(d)
    sums = [0] * (l + 1)
    out = [0]
    best = 0
    for n, v in enumerate(seq.elements, start=1):
        for d in divisors[n]:
            sums[d] += v
            if abs(sums[d]) > best:
                best = abs(sums[d])
        out.append(best)
    return out


def negate(seq: Sequence) -> Sequence:
    return Sequence(tuple(-v for v in seq.elements))


def appendix_sequence() -> Sequence:
    """The length-1160 discrepancy-2 sequence shipped with the package."""
    text = resources.files("edpsat.data").joinpath("appendix_a_1160.txt").read_text()
    return parse_sequence(text)
