"""Exhaustive depth-first search over ±1 sequences with homogeneous partial-sum pruning.

This is the ground truth the SAT pipeline is checked against. It shares no
code with the encoder or solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Sequence

DEFAULT_BUDGET = 2_000_000


class OracleBudgetExceeded(RuntimeError):
    """The node limit ran out before the search could decide the question."""

    def __init__(self, budget: int, l: int, C: int):
        self.budget = budget
        super().__init__(f"search for l={l}, C={C} exceeded the budget of {budget} nodes")


@dataclass(frozen=True)
class OracleResult:
    exists: bool
    witness: Optional[Sequence]
    nodes: int


@dataclass(frozen=True)
class MaxLengthResult:
    length: int
    witness: Sequence
    nodes: int
    reached_cap: bool


def _divisors_table(l: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(l + 1)]
    for d in range(1, l + 1):
        for m in range(d, l + 1, d):
            divs[m].append(d)
    return divs


def _search(l: int, C: int, budget: int, first: int) -> tuple[int, list[int], int]:
    """Deepest prefix (up to l) with discrepancy <= C; returns (depth, prefix, nodes)."""
    if C < 1:
        raise ValueError(f"bound C must be positive, got {C}")
    if l < 0:
        raise ValueError(f"length must be non-negative, got {l}")
    if l == 0:
        return 0, [], 0
    order = (first, -first)
    divs = _divisors_table(l)
    sums = [0] * (l + 1)
    x = [0] * (l + 1)
    tried = [0] * (l + 1)
    best, best_prefix, nodes = 0, [], 0
    n = 1
    while n >= 1:
        if tried[n] == 2:
            tried[n] = 0
            n -= 1
            if n >= 1:
                v = x[n]
                for d in divs[n]:
                    sums[d] -= v
            continue
        v = order[tried[n]]
        tried[n] += 1
        nodes += 1
        if nodes > budget:
            raise OracleBudgetExceeded(budget, l, C)
        dn = divs[n]
        if any(abs(sums[d] + v) > C for d in dn):
            continue
        for d in dn:
            sums[d] += v
        x[n] = v
        if n > best:
            best, best_prefix = n, x[1 : n + 1]
            if n == l:
                break
        n += 1
    return best, best_prefix, nodes


def exists_sequence(
    l: int, C: int, budget: int = DEFAULT_BUDGET, first: int = 1
) -> OracleResult:
    """Is there a ±1 sequence of length l with discrepancy at most C?

    Raises :class:`OracleBudgetExceeded` rather than guessing when the node
    budget runs out.
    """
    depth, prefix, nodes = _search(l, C, budget, first)
    if depth == l:
        return OracleResult(True, Sequence(tuple(prefix)), nodes)
    return OracleResult(False, None, nodes)


def max_length(C: int, cap: int, budget: int = DEFAULT_BUDGET, first: int = 1) -> MaxLengthResult:
    """Largest l <= cap admitting a discrepancy-C sequence, with a witness.

    Low discrepancy is inherited by prefixes, so one search tree covers every
    length: the answer is the deepest node the pruned search reaches.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    depth, prefix, nodes = _search(cap, C, budget, first)
    return MaxLengthResult(depth, Sequence(tuple(prefix)), nodes, depth == cap)
