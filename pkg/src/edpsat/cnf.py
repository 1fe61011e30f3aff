"""CNF formulas, the fixed variable layout, DIMACS text and solver output.

Literals are signed ints in the DIMACS convention: ``v`` is the positive
literal of variable ``v`` and ``-v`` its negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

LAYOUT_VERSION = 1


class DimacsError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SolverOutputError(ValueError):
    pass


@dataclass
class Formula:
    num_vars: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list, compare=False)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.clauses = [tuple(c) for c in self.clauses]
        for idx, clause in enumerate(self.clauses):
            self._check(clause, idx)

    def _check(self, clause: tuple[int, ...], idx: int) -> None:
        if not clause:
            raise ValueError(f"clause {idx} is empty")
        for lit in clause:
            if lit == 0 or abs(lit) > self.num_vars:
                raise ValueError(f"clause {idx}: literal {lit} outside 1..{self.num_vars}")

    def add(self, clause: Iterable[int]) -> None:
        clause = tuple(clause)
        self._check(clause, len(self.clauses))
        self.clauses.append(clause)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


class Assignment:
    """Total truth assignment over variables 1..num_vars."""

    __slots__ = ("values",)

    def __init__(self, values: Sequence[bool]):
        # values[0] is a placeholder so that values[v] is variable v
        self.values = tuple(bool(v) for v in values)

    @classmethod
    def from_literals(cls, literals: Iterable[int], num_vars: int) -> "Assignment":
        values = [False] * (num_vars + 1)
        for lit in literals:
            if abs(lit) <= num_vars:
                values[abs(lit)] = lit > 0
        return cls(values)

    @property
    def num_vars(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, var: int) -> bool:
        return self.values[var]

    def satisfies(self, lit: int) -> bool:
        return self.values[abs(lit)] == (lit > 0)

    def literals(self) -> list[int]:
        return [v if self.values[v] else -v for v in range(1, len(self.values))]

    def falsified_clauses(self, formula: Formula) -> list[int]:
        vals = self.values
        return [
            idx
            for idx, clause in enumerate(formula.clauses)
            if not any(vals[abs(lit)] == (lit > 0) for lit in clause)
        ]

    def satisfies_formula(self, formula: Formula) -> bool:
        return self.num_vars >= formula.num_vars and not self.falsified_clauses(formula)

    def __eq__(self, other):
        return isinstance(other, Assignment) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Assignment({self.literals()})"


# Solver outcomes -----------------------------------------------------------


@dataclass(frozen=True)
class Sat:
    assignment: Assignment
    status = "SAT"


@dataclass(frozen=True)
class Unsat:
    status = "UNSAT"


@dataclass(frozen=True)
class Unknown:
    reason: str  # "budget", "parse" or "crash"
    detail: str = ""
    status = "UNKNOWN"


SolveOutcome = Union[Sat, Unsat, Unknown]


# Variable layout -----------------------------------------------------------


@dataclass(frozen=True)
class P:
    i: int


@dataclass(frozen=True)
class B:
    pass


@dataclass(frozen=True)
class StateUnary:
    d: int
    i: int
    j: int


@dataclass(frozen=True)
class StateBit:
    d: int
    i: int
    b: int


Proposition = Union[P, B, StateUnary, StateBit]


def binary_width(C: int) -> int:
    """Sign bit plus enough magnitude bits for 0..C."""
    return 1 + max(1, (C).bit_length())


class VarMap:
    """Deterministic variable numbering.

    p_i is variable i, B is l+1, then the state block ordered by d, then
    position i = 1..floor(l/d)+1, then counter value j (unary) or bit b
    (binary, b = 0 is the least significant magnitude bit, b = w-1 the sign).
    """

    def __init__(self, l: int, C: int, max_d: int, encoding_kind: str):
        if encoding_kind not in ("unary", "binary"):
            raise ValueError(f"unknown encoding {encoding_kind!r}")
        self.l, self.C, self.max_d, self.encoding_kind = l, C, max_d, encoding_kind
        self.width = 2 * C + 1 if encoding_kind == "unary" else binary_width(C)
        self._offsets = [0, l + 2]  # _offsets[d] = first state var for d
        for d in range(1, max_d + 1):
            self._offsets.append(self._offsets[d] + self.positions(d) * self.width)
        self.num_vars = self._offsets[max_d + 1] - 1

    def __repr__(self):
        return (
            f"VarMap(l={self.l}, C={self.C}, max_d={self.max_d}, "
            f"encoding_kind={self.encoding_kind!r})"
        )

    def __eq__(self, other):
        return isinstance(other, VarMap) and self.params() == other.params()

    def params(self) -> tuple:
        return (self.l, self.C, self.max_d, self.encoding_kind)

    def positions(self, d: int) -> int:
        return self.l // d + 1

    def p(self, i: int) -> int:
        if not 1 <= i <= self.l:
            raise IndexError(f"p_{i} out of range")
        return i

    @property
    def b(self) -> int:
        return self.l + 1

    def _slot(self, d: int, i: int) -> int:
        if not 1 <= d <= self.max_d or not 1 <= i <= self.positions(d):
            raise IndexError(f"no state position (d={d}, i={i})")
        return self._offsets[d] + (i - 1) * self.width

    def state(self, d: int, i: int, j: int) -> int:
        if self.encoding_kind != "unary":
            raise TypeError("state() applies to the unary layout")
        if abs(j) > self.C:
            raise IndexError(f"counter value {j} outside [-{self.C}, {self.C}]")
        return self._slot(d, i) + j + self.C

    def bit(self, d: int, i: int, b: int) -> int:
        if self.encoding_kind != "binary":
            raise TypeError("bit() applies to the binary layout")
        if not 0 <= b < self.width:
            raise IndexError(f"bit {b} outside 0..{self.width - 1}")
        return self._slot(d, i) + b

    def position_vars(self, d: int, i: int) -> range:
        start = self._slot(d, i)
        return range(start, start + self.width)

    def var_of(self, prop: Proposition) -> int:
        if isinstance(prop, P):
            return self.p(prop.i)
        if isinstance(prop, B):
            return self.b
        if isinstance(prop, StateUnary):
            return self.state(prop.d, prop.i, prop.j)
        if isinstance(prop, StateBit):
            return self.bit(prop.d, prop.i, prop.b)
        raise TypeError(prop)

    def decode(self, var: int) -> Proposition:
        if not 1 <= var <= self.num_vars:
            raise IndexError(f"variable {var} outside 1..{self.num_vars}")
        if var <= self.l:
            return P(var)
        if var == self.l + 1:
            return B()
        lo, hi = 1, self.max_d
        while lo < hi:  # last d with _offsets[d] <= var
            mid = (lo + hi + 1) // 2
            if self._offsets[mid] <= var:
                lo = mid
            else:
                hi = mid - 1
        d = lo
        i, r = divmod(var - self._offsets[d], self.width)
        if self.encoding_kind == "unary":
            return StateUnary(d, i + 1, r - self.C)
        return StateBit(d, i + 1, r)

    # metadata round trip through DIMACS comments

    def comments(self) -> list[str]:
        return [
            f"edpsat layout={LAYOUT_VERSION} l={self.l} C={self.C} "
            f"max_d={self.max_d} encoding={self.encoding_kind}"
        ]

    @classmethod
    def from_comments(cls, comments: Iterable[str]) -> "VarMap":
        for line in comments:
            m = re.match(
                r"\s*edpsat layout=(\d+) l=(\d+) C=(\d+) max_d=(\d+) encoding=(\w+)", line
            )
            if m:
                if int(m.group(1)) != LAYOUT_VERSION:
                    raise ValueError(f"unsupported layout version {m.group(1)}")
                return cls(int(m.group(2)), int(m.group(3)), int(m.group(4)), m.group(5))
        raise ValueError("no edpsat metadata comment found")


# DIMACS --------------------------------------------------------------------


def emit_dimacs(f: Formula) -> str:
    parts = [f"c {c}\n" if c else "c\n" for c in f.comments]
    parts.append(f"p cnf {f.num_vars} {len(f.clauses)}\n")
    parts.extend(" ".join(map(str, clause)) + " 0\n" for clause in f.clauses)
    return "".join(parts)


def write_dimacs(f: Formula, path) -> None:
    with open(path, "w") as fh:
        for c in f.comments:
            fh.write(f"c {c}\n" if c else "c\n")
        fh.write(f"p cnf {f.num_vars} {len(f.clauses)}\n")
        for clause in f.clauses:
            fh.write(" ".join(map(str, clause)) + " 0\n")


def parse_dimacs(text: str) -> Formula:
    header = None
    comments: list[str] = []
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    pending_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line[0] == "c":
            comments.append(line[1:].strip())
            continue
        if line[0] == "%":  # end marker used by some benchmark sets
            break
        if line[0] == "p":
            if header is not None:
                raise DimacsError("duplicate header", lineno)
            toks = line.split()
            if len(toks) != 4 or toks[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                header = (int(toks[2]), int(toks[3]))
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"malformed header {line!r}", lineno)
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not pending:
                    raise DimacsError("empty clause", lineno)
                clauses.append(tuple(pending))
                pending = []
                pending_line = None
                continue
            if abs(lit) > header[0]:
                raise DimacsError(f"literal {lit} exceeds declared {header[0]} variables", lineno)
            if pending_line is None:
                pending_line = lineno
            pending.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("clause missing terminating 0", pending_line)
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return Formula(header[0], clauses, comments)


def read_dimacs(path) -> Formula:
    with open(path) as fh:
        return parse_dimacs(fh.read())


# Solver output -------------------------------------------------------------


def parse_solver_output(
    text: str, num_vars: Optional[int] = None, required: int = 0
) -> SolveOutcome:
    """Interpret SAT-competition style output (an ``s`` line plus ``v`` lines).

    Variables not mentioned in the v-lines are set to false. ``required``
    names a prefix 1..required of variables that must be mentioned
    explicitly; a SAT answer that leaves one of them out is an error.
    """
    status = None
    lits: list[int] = []
    terminated = False
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v ") or line == "v":
            for tok in line[1:].split():
                try:
                    lit = int(tok)
                except ValueError:
                    raise SolverOutputError(f"bad literal {tok!r} in v-line") from None
                if lit == 0:
                    terminated = True
                else:
                    lits.append(lit)
    if status == "UNSATISFIABLE":
        return Unsat()
    if status != "SATISFIABLE":
        return Unknown("parse", status or "no s-line")
    return Sat(_model(lits, terminated, num_vars, required))


def _model(lits: list[int], terminated: bool, num_vars: Optional[int], required: int) -> Assignment:
    if not terminated:
        raise SolverOutputError("model is not terminated by 0")
    seen: dict[int, bool] = {}
    for lit in lits:
        if seen.get(abs(lit), lit > 0) != (lit > 0):
            raise SolverOutputError(f"variable {abs(lit)} assigned both polarities")
        seen[abs(lit)] = lit > 0
    missing = [v for v in range(1, required + 1) if v not in seen]
    if missing:
        raise SolverOutputError(f"model omits required variables, first is {missing[0]}")
    n = num_vars if num_vars is not None else max(seen, default=0)
    return Assignment.from_literals(lits, n)


def parse_model(text: str, num_vars: Optional[int] = None, required: int = 0) -> SolveOutcome:
    """Accept either raw solver stdout or a bare list of signed literals."""
    if re.search(r"^\s*s\s", text, re.MULTILINE):
        return parse_solver_output(text, num_vars, required)
    lits = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("v"):
            line = line[1:]
        for tok in line.split():
            try:
                lits.append(int(tok))
            except ValueError:
                raise SolverOutputError(f"bad literal {tok!r}") from None
    if not lits:
        return Unknown("parse", "no model in input")
    return Sat(_model([x for x in lits if x != 0], True, num_vars, required))
