"""A small CDCL solver: two watched literals, first-UIP learning, VSIDS, geometric restarts.

Literals are DIMACS-style signed ints. Per-literal arrays have length
2n+1 and are indexed directly by the signed literal, so ``arr[-v]`` lands
in the upper half of the list.
"""

from __future__ import annotations

import heapq
import random
from typing import Optional

from ..cnf import Assignment, Formula, Sat, SolveOutcome, Unknown, Unsat
from .proof import RupProof

DEFAULT_CONFLICT_BUDGET = 200_000


class SolverError(RuntimeError):
    """The solver produced something it cannot stand behind (a bug, not an outcome)."""


class CDCLSolver:
    def __init__(
        self,
        formula: Formula,
        seed: Optional[int] = None,
        log_proof: bool = False,
        restart_first: int = 100,
        restart_factor: float = 1.5,
        var_decay: float = 0.95,
    ):
        self.formula = formula
        n = self.num_vars = formula.num_vars
        self.val = [0] * (2 * n + 1)  # per literal: 1 true, -1 false, 0 unassigned
        self.level = [0] * (n + 1)
        self.reason: list[Optional[int]] = [None] * (n + 1)
        self.phase = [False] * (n + 1)
        self.activity = [0.0] * (n + 1)
        self.var_inc = 1.0
        self.var_decay = var_decay
        self.watches: list[list[int]] = [[] for _ in range(2 * n + 1)]
        self.clauses: list[list[int]] = []
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.restart_first = restart_first
        self.restart_factor = restart_factor
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self.proof = RupProof() if log_proof else None
        self._inconsistent = False
        self._units: list[int] = []

        if seed is not None:
            rng = random.Random(seed)
            for v in range(1, n + 1):
                self.activity[v] = rng.random() * 1e-6
        for clause in formula.clauses:
            self._add_input_clause(clause)
        self._heap = [(-self.activity[v], v) for v in range(1, n + 1)]
        heapq.heapify(self._heap)

    # clause database

    def _add_input_clause(self, clause) -> None:
        lits = list(dict.fromkeys(clause))
        if any(-lit in lits for lit in lits):
            return  # tautology
        if len(lits) == 1:
            self._units.append(lits[0])
            return
        self._attach(lits)

    def _attach(self, lits: list[int]) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(ci)
        self.watches[lits[1]].append(ci)
        return ci

    # trail

    def _assign(self, lit: int, reason: Optional[int]) -> None:
        v = abs(lit)
        self.val[lit] = 1
        self.val[-lit] = -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _backtrack(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        start = self.trail_lim[lvl]
        val, phase, activity, heap = self.val, self.phase, self.activity, self._heap
        for lit in self.trail[start:]:
            v = abs(lit)
            val[lit] = 0
            val[-lit] = 0
            phase[v] = lit > 0
            self.reason[v] = None
            heapq.heappush(heap, (-activity[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = start

    def _propagate(self) -> Optional[int]:
        """Unit propagation; returns the index of a conflicting clause or None."""
        val, watches, clauses, trail = self.val, self.watches, self.clauses, self.trail
        while self.qhead < len(trail):
            false_lit = -trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if val[first] == 1:
                    ws[j] = ci
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if val[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(ci)
                        break
                else:
                    ws[j] = ci
                    j += 1
                    if val[first] == -1:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        return ci
                    self._assign(first, ci)
            del ws[j:]
        return None

    # conflict analysis

    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for u in range(1, self.num_vars + 1):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
            self._heap = [(-act[u], u) for u in range(1, self.num_vars + 1) if self.val[u] == 0]
            heapq.heapify(self._heap)
        elif self.val[v] == 0:
            heapq.heappush(self._heap, (-act[v], v))

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        """First-UIP clause (asserting literal first) and the backjump level."""
        seen = set()
        learnt = [0]
        level, reason, trail = self.level, self.reason, self.trail
        cur = len(self.trail_lim)
        counter = 0
        idx = len(trail) - 1
        clause = self.clauses[confl]
        p = None
        while True:
            for q in clause:
                if p is not None and q == p:
                    continue
                v = abs(q)
                if v not in seen and level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if level[v] >= cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while abs(trail[idx]) not in seen:
                idx -= 1
            p = trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[reason[abs(p)]]
        learnt[0] = -p

        # drop literals implied by the rest of the clause through their reason
        marked = {abs(q) for q in learnt}
        kept = [learnt[0]]
        for q in learnt[1:]:
            r = reason[abs(q)]
            if r is None or any(
                abs(x) not in marked and level[abs(x)] > 0 for x in self.clauses[r] if x != -q
            ):
                kept.append(q)
        learnt = kept

        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[abs(learnt[1])]

    def _pick_branch(self) -> int:
        heap, val, act = self._heap, self.val, self.activity
        while heap:
            neg_act, v = heapq.heappop(heap)
            if val[v] == 0 and -neg_act == act[v]:
                return v if self.phase[v] else -v
        for v in range(1, self.num_vars + 1):  # stale heap; rebuild once
            if val[v] == 0:
                self._heap = [(-act[u], u) for u in range(1, self.num_vars + 1) if val[u] == 0]
                heapq.heapify(self._heap)
                return self._pick_branch()
        return 0

    # main loop

    def _log(self, clause) -> None:
        if self.proof is not None:
            self.proof.add(clause)

    def _unsat(self) -> Unsat:
        self._inconsistent = True
        self._log(())
        return Unsat()

    def solve(self, budget: int = DEFAULT_CONFLICT_BUDGET) -> SolveOutcome:
        if self._inconsistent:
            return Unsat()
        for lit in self._units:
            if self.val[lit] == -1:
                return self._unsat()
            if self.val[lit] == 0:
                self._assign(lit, None)
        if self._propagate() is not None:
            return self._unsat()

        next_restart = self.restart_first
        since_restart = 0
        budget_end = self.conflicts + budget
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    return self._unsat()
                learnt, back = self._analyze(confl)
                self._log(learnt)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._assign(learnt[0], None)
                else:
                    self._assign(learnt[0], self._attach(learnt))
                self.var_inc /= self.var_decay
                continue
            if self.conflicts >= budget_end:
                self._backtrack(0)
                return Unknown("budget", f"{budget} conflicts")
            if since_restart >= next_restart:
                self._backtrack(0)
                since_restart = 0
                next_restart = int(next_restart * self.restart_factor)
                continue
            lit = self._pick_branch()
            if lit == 0:
                model = Assignment([False] + [self.val[v] == 1 for v in range(1, self.num_vars + 1)])
                bad = model.falsified_clauses(self.formula)
                if bad:
                    raise SolverError(f"model falsifies clause {bad[0]}")
                return Sat(model)
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._assign(lit, None)


def solve_internal(
    f: Formula, budget: int = DEFAULT_CONFLICT_BUDGET, seed: Optional[int] = None
) -> SolveOutcome:
    return CDCLSolver(f, seed=seed).solve(budget)


def solve_with_proof(
    f: Formula, budget: int = DEFAULT_CONFLICT_BUDGET, seed: Optional[int] = None
) -> tuple[SolveOutcome, RupProof]:
    """Solve while recording every learnt clause; on UNSAT the proof ends with the empty clause."""
    s = CDCLSolver(f, seed=seed, log_proof=True)
    return s.solve(budget), s.proof
