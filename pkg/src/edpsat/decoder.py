"""Read sequences out of models and cross-check state variables against real traces."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import automaton
from .automaton import SINK, Counter
from .cnf import Assignment, VarMap
from .core import Sequence
from .encoder import bit_pattern, forbidden_patterns


def decode_model(vm: VarMap, a: Assignment) -> Sequence:
    return Sequence(tuple(1 if a[vm.p(i)] else -1 for i in range(1, vm.l + 1)))


@dataclass(frozen=True)
class Violation:
    kind: str  # "state", "frame" or "sink"
    d: int = 0
    i: int = 0
    detail: str = ""

    def __str__(self):
        where = f" at (d={self.d}, i={self.i})" if self.d else ""
        return f"{self.kind}{where}: {self.detail}"


@dataclass
class AuditReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed


def _read_position(vm: VarMap, a: Assignment, d: int, i: int):
    """Counter value stored at (d, i), or None if the frame is broken there."""
    vals = [a[v] for v in vm.position_vars(d, i)]
    if vm.encoding_kind == "unary":
        on = [j for j, v in zip(range(-vm.C, vm.C + 1), vals) if v]
        return on[0] if len(on) == 1 else None
    if vals in forbidden_patterns(vm.C):
        return None
    mag = sum(1 << b for b, v in enumerate(vals[:-1]) if v)
    return -mag if vals[-1] else mag


def audit_model(vm: VarMap, a: Assignment, C: int | None = None) -> AuditReport:
    """Replay the automaton on every d-subsequence and compare with the model."""
    C = vm.C if C is None else C
    report = AuditReport()
    if C != vm.C:
        report.violations.append(Violation("params", detail=f"C={C} but layout has C={vm.C}"))
        return report
    if a[vm.b]:
        report.violations.append(Violation("sink", detail="B is true"))
    seq = decode_model(vm, a)
    for d in range(1, vm.max_d + 1):
        trace = automaton.run(C, seq.subsequence(d))
        for i, expected in enumerate(trace.states, start=1):
            got = _read_position(vm, a, d, i)
            if got is None:
                report.violations.append(Violation("frame", d, i, "no valid state encoded"))
            elif expected == SINK:
                report.violations.append(
                    Violation("state", d, i, f"automaton in sink, model says s_{got}")
                )
            elif got != expected.j:
                report.violations.append(
                    Violation("state", d, i, f"automaton in s_{expected.j}, model says s_{got}")
                )
    return report


def assignment_for(vm: VarMap, seq: Sequence) -> Assignment:
    """Build the assignment a sequence induces: p from the symbols, states from traces.

    Positions after the automaton enters the sink keep the state they had
    before it; such an assignment cannot satisfy the formula, which is the
    point when checking that only low-discrepancy sequences extend to models.
    """
    if len(seq) != vm.l:
        raise ValueError(f"sequence length {len(seq)} != l={vm.l}")
    values = [False] * (vm.num_vars + 1)
    for i, x in enumerate(seq, start=1):
        values[i] = x > 0
    values[vm.b] = False
    for d in range(1, vm.max_d + 1):
        trace = automaton.run(vm.C, seq.subsequence(d))
        last = 0
        for i, state in enumerate(trace.states, start=1):
            if isinstance(state, Counter):
                last = state.j
            else:
                values[vm.b] = True
            if vm.encoding_kind == "unary":
                values[vm.state(d, i, last)] = True
            else:
                for b, bit in enumerate(bit_pattern(last, vm.width)):
                    values[vm.bit(d, i, b)] = bit
    return Assignment(values)
