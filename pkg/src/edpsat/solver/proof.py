"""RUP/DRUP proofs: text format, a forward checker, and greedy trimming.

The checker keeps its own clause database and propagation code; it does not
reuse anything from the CDCL solver whose proofs it checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..cnf import Formula


class ProofFormatError(ValueError):
    pass


@dataclass
class RupProof:
    """Ordered proof steps; each is (deleted, clause). An added empty clause ends a refutation."""

    steps: list[tuple[bool, tuple[int, ...]]] = field(default_factory=list)

    def add(self, clause: Iterable[int]) -> None:
        self.steps.append((False, tuple(clause)))

    def delete(self, clause: Iterable[int]) -> None:
        self.steps.append((True, tuple(clause)))

    @property
    def lemmas(self) -> list[tuple[int, ...]]:
        return [c for deleted, c in self.steps if not deleted]

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        out = []
        for deleted, clause in self.steps:
            body = " ".join(map(str, clause + (0,)))
            out.append(f"d {body}\n" if deleted else f"{body}\n")
        return "".join(out)

    @classmethod
    def from_text(cls, text: str) -> "RupProof":
        proof = cls()
        pending: list[int] = []
        deleted = False
        for lineno, raw in enumerate(text.splitlines(), start=1):
            toks = raw.split()
            if not toks or toks[0] == "c":
                continue
            if toks[0] == "d":
                if pending:
                    raise ProofFormatError(f"line {lineno}: deletion inside an open clause")
                deleted = True
                toks = toks[1:]
            for tok in toks:
                try:
                    lit = int(tok)
                except ValueError:
                    raise ProofFormatError(f"line {lineno}: bad literal {tok!r}") from None
                if lit == 0:
                    proof.steps.append((deleted, tuple(pending)))
                    pending, deleted = [], False
                else:
                    pending.append(lit)
        if pending:
            raise ProofFormatError("last proof clause is missing its terminating 0")
        return proof


@dataclass(frozen=True)
class RupResult:
    accepted: bool
    failed_step: Optional[int] = None  # 1-based index into proof.steps
    reason: str = ""

    def __bool__(self):
        return self.accepted


class _Database:
    """Clause set with two-watched-literal propagation of a root-level assignment."""

    def __init__(self, num_vars: int):
        self.n = num_vars
        self.assigned: dict[int, bool] = {}
        self.trail: list[int] = []
        self.clauses: list[list[int]] = []
        self.alive: list[bool] = []
        self.watches: dict[int, list[int]] = {}
        self.units: list[int] = []  # indices of clauses with one literal
        self.inconsistent = False

    def value(self, lit: int) -> Optional[bool]:
        v = self.assigned.get(abs(lit))
        return None if v is None else v == (lit > 0)

    def _set(self, lit: int) -> None:
        self.assigned[abs(lit)] = lit > 0
        self.trail.append(lit)

    def add(self, clause: tuple[int, ...]) -> None:
        lits = list(dict.fromkeys(clause))
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.alive.append(True)
        if not lits:
            self.inconsistent = True
            return
        if len(lits) == 1:
            self.units.append(ci)
        else:
            # watch non-false literals where possible so the root trail stays valid
            lits.sort(key=lambda x: self.value(x) is False)
            self.watches.setdefault(lits[0], []).append(ci)
            self.watches.setdefault(lits[1], []).append(ci)
        if self.inconsistent:
            return
        free = [x for x in lits if self.value(x) is not False]
        if not free:
            self.inconsistent = True
        elif len(free) == 1 and self.value(free[0]) is None:
            self._set(free[0])
            if self.propagate(len(self.trail) - 1) is not None:
                self.inconsistent = True

    def propagate(self, start: int) -> Optional[int]:
        """Propagate trail[start:] onward; return a conflicting clause index or None."""
        qhead = start
        trail, clauses, alive = self.trail, self.clauses, self.alive
        while qhead < len(trail):
            false_lit = -trail[qhead]
            qhead += 1
            ws = self.watches.get(false_lit)
            if not ws:
                continue
            keep = []
            conflict = None
            for pos, ci in enumerate(ws):
                if not alive[ci]:
                    continue
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                other = c[0]
                if self.value(other) is True:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if self.value(c[k]) is not False:
                        c[1], c[k] = c[k], c[1]
                        self.watches.setdefault(c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if self.value(other) is False:
                        keep.extend(ws[pos + 1 :])
                        conflict = ci
                        break
                    self._set(other)
            self.watches[false_lit] = keep
            if conflict is not None:
                return conflict
        return None

    def undo(self, length: int) -> None:
        for lit in self.trail[length:]:
            del self.assigned[abs(lit)]
        del self.trail[length:]

    def is_rup(self, clause: tuple[int, ...]) -> bool:
        if self.inconsistent:
            return True
        mark = len(self.trail)
        ok = False
        for lit in clause:
            v = self.value(lit)
            if v is True:
                ok = True
                break
            if v is None:
                self._set(-lit)
        if not ok:
            ok = self.propagate(mark) is not None
        self.undo(mark)
        return ok

    def rebuild(self) -> None:
        """Recompute the root-level trail from scratch (after deletions)."""
        self.undo(0)
        self.inconsistent = False
        old = [c for c, a in zip(self.clauses, self.alive) if a]
        self.clauses, self.alive, self.watches, self.units = [], [], {}, []
        for c in old:
            self.add(tuple(c))
        self._root_units()

    def _root_units(self) -> None:
        for ci in self.units:
            if self.inconsistent:
                return
            if not self.alive[ci]:
                continue
            lit = self.clauses[ci][0]
            v = self.value(lit)
            if v is False:
                self.inconsistent = True
            elif v is None:
                mark = len(self.trail)
                self._set(lit)
                if self.propagate(mark) is not None:
                    self.inconsistent = True

    def delete(self, clause: tuple[int, ...]) -> bool:
        key = sorted(set(clause))
        for ci in range(len(self.clauses) - 1, -1, -1):
            if self.alive[ci] and sorted(self.clauses[ci]) == key:
                self.alive[ci] = False
                return True
        return False


def check_rup(f: Formula, proof: RupProof, honor_deletions: bool = True) -> RupResult:
    """Forward-check every added clause for reverse unit propagation.

    Accepted iff every added clause is RUP with respect to the formula plus
    the clauses added before it, and the last added clause is empty.
    """
    if not proof.steps:
        return RupResult(False, None, "empty proof")
    db = _Database(f.num_vars)
    for clause in f.clauses:
        db.add(tuple(clause))
    db._root_units()
    last_added = None
    for idx, (deleted, clause) in enumerate(proof.steps, start=1):
        if deleted:
            if honor_deletions and len(clause) > 1 and db.delete(clause):
                # unit clauses are never deleted, so the root trail only needs
                # rebuilding when a reason might have gone
                db.rebuild()
            continue
        if not db.is_rup(clause):
            return RupResult(False, idx, f"step {idx} is not RUP")
        db.add(clause)
        if len(clause) == 1:
            mark = len(db.trail)
            if db.value(clause[0]) is None:
                db._set(clause[0])
                if db.propagate(mark) is not None:
                    db.inconsistent = True
        last_added = clause
    if last_added is None or len(last_added) != 0:
        return RupResult(False, None, "proof does not end with the empty clause")
    return RupResult(True)


def trim_proof(f: Formula, proof: RupProof) -> RupProof:
    """Greedily drop lemmas (last to first) whose removal keeps the proof valid.

    The result is deletion-minimal: removing any one remaining lemma makes
    it fail to check.
    """
    if not check_rup(f, proof):
        raise ValueError("cannot trim a proof that does not check")
    steps = [s for s in proof.steps if not s[0]]
    i = len(steps) - 2  # the final empty clause always stays
    while i >= 0:
        candidate = RupProof(steps[:i] + steps[i + 1 :])
        if check_rup(f, candidate):
            steps = candidate.steps
        i -= 1
    return RupProof(list(steps))
