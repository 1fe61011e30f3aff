"""Compile "is there a ±1 sequence of length l with discrepancy at most C" into CNF.

Each homogeneous subsequence x_d, x_2d, ... is fed through its own copy of
the counting automaton; all copies share the input propositions p_i and the
single sink proposition B, which is asserted false.  Two state encodings are
provided: one-hot (``unary``) with exactly-one frame constraints, and
sign-magnitude (``binary``) with forbidden-pattern frame constraints.  No
auxiliary variables are introduced, so the layout is exactly :class:`VarMap`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .cnf import Formula, VarMap, binary_width

ENCODINGS = ("unary", "binary")


@dataclass(frozen=True)
class EncodeParams:
    l: int
    C: int
    max_d: Optional[int] = None
    encoding_kind: str = "binary"

    def __post_init__(self):
        if not isinstance(self.l, int) or self.l < 1:
            raise ValueError(f"length l must be a positive integer, got {self.l!r}")
        if not isinstance(self.C, int) or self.C < 1:
            raise ValueError(f"bound C must be a positive integer, got {self.C!r}")
        if self.encoding_kind not in ENCODINGS:
            raise ValueError(f"encoding must be one of {ENCODINGS}, got {self.encoding_kind!r}")
        bound = self.default_max_d
        if self.max_d is None:
            object.__setattr__(self, "max_d", bound)
        elif not (min(1, bound) <= self.max_d <= bound):
            raise ValueError(f"max_d={self.max_d} outside 1..{bound} for l={self.l}, C={self.C}")

    @property
    def default_max_d(self) -> int:
        # shorter subsequences can never sum past C
        return self.l // (self.C + 1)

    @property
    def width(self) -> int:
        return 2 * self.C + 1 if self.encoding_kind == "unary" else binary_width(self.C)

    def varmap(self) -> VarMap:
        return VarMap(self.l, self.C, self.max_d, self.encoding_kind)

    def state_positions(self) -> int:
        return sum(self.l // d + 1 for d in range(1, self.max_d + 1))


def _unary_clauses(vm: VarMap) -> Iterator[tuple[int, ...]]:
    C, B = vm.C, vm.b
    for d in range(1, vm.max_d + 1):
        k = vm.l // d
        yield (vm.state(d, 1, 0),)
        for i in range(1, k + 1):
            p = i * d
            base, nxt = vm.state(d, i, 0), vm.state(d, i + 1, 0)
            for j in range(-C, C):
                yield (-(base + j), -p, nxt + j + 1)
            for j in range(-C + 1, C + 1):
                yield (-(base + j), p, nxt + j - 1)
            yield (-(base + C), -p, B)
            yield (-(base - C), p, B)
        for i in range(1, k + 2):
            group = list(vm.position_vars(d, i))
            yield tuple(group)
            for a, b in combinations(group, 2):
                yield (-a, -b)


def bit_pattern(value: int, width: int) -> list[bool]:
    """Bits b_0..b_{w-1} of a sign-magnitude value; b_{w-1} is the sign."""
    mag = abs(value)
    bits = [bool(mag >> b & 1) for b in range(width - 1)]
    bits.append(value < 0)
    return bits


def forbidden_patterns(C: int) -> list[list[bool]]:
    """Bit patterns that name no automaton state: negated zero and magnitudes above C."""
    w = binary_width(C)
    out = []
    for sign in (False, True):
        for mag in range(1 << (w - 1)):
            if mag > C or (sign and mag == 0):
                bits = [bool(mag >> b & 1) for b in range(w - 1)]
                bits.append(sign)
                out.append(bits)
    return out


def _binary_clauses(vm: VarMap) -> Iterator[tuple[int, ...]]:
    C, B, w = vm.C, vm.b, vm.width
    patterns = {j: bit_pattern(j, w) for j in range(-C, C + 1)}
    bad = forbidden_patterns(C)

    def match(start: int, bits: list[bool]) -> list[int]:
        # literals true exactly when the position holds this pattern
        return [start + b if bit else -(start + b) for b, bit in enumerate(bits)]

    for d in range(1, vm.max_d + 1):
        k = vm.l // d
        first = vm.bit(d, 1, 0)
        for b in range(w):
            yield (-(first + b),)
        for i in range(1, k + 1):
            p = i * d
            cur, nxt = vm.bit(d, i, 0), vm.bit(d, i + 1, 0)
            for j in range(-C, C):
                body = tuple(-lit for lit in match(cur, patterns[j])) + (-p,)
                for lit in match(nxt, patterns[j + 1]):
                    yield body + (lit,)
            for j in range(-C + 1, C + 1):
                body = tuple(-lit for lit in match(cur, patterns[j])) + (p,)
                for lit in match(nxt, patterns[j - 1]):
                    yield body + (lit,)
            yield tuple(-lit for lit in match(cur, patterns[C])) + (-p, B)
            yield tuple(-lit for lit in match(cur, patterns[-C])) + (p, B)
        for i in range(1, k + 2):
            start = vm.bit(d, i, 0)
            for bits in bad:
                yield tuple(-lit for lit in match(start, bits))


def iter_clauses(params: EncodeParams) -> Iterator[tuple[int, ...]]:
    """Stream the clauses of the encoding without building a Formula."""
    vm = params.varmap()
    yield (-vm.b,)
    if params.encoding_kind == "unary":
        yield from _unary_clauses(vm)
    else:
        yield from _binary_clauses(vm)


def encode(params: EncodeParams) -> tuple[Formula, VarMap]:
    vm = params.varmap()
    f = Formula(vm.num_vars, list(iter_clauses(params)), vm.comments())
    return f, vm


def encode_unary(params: EncodeParams) -> tuple[Formula, VarMap]:
    if params.encoding_kind != "unary":
        raise ValueError("encode_unary needs encoding_kind='unary'")
    return encode(params)


def encode_binary(params: EncodeParams) -> tuple[Formula, VarMap]:
    if params.encoding_kind != "binary":
        raise ValueError("encode_binary needs encoding_kind='binary'")
    return encode(params)


def stats(f: Formula) -> tuple[int, int]:
    return f.num_vars, len(f.clauses)


def streamed_stats(params: EncodeParams) -> tuple[int, int]:
    """(variables, clauses) of an encoding, counted without keeping the clauses."""
    n = 0
    for _ in iter_clauses(params):
        n += 1
    return params.varmap().num_vars, n
