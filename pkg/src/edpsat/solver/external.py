"""Run a competition-style SAT solver as a subprocess on a DIMACS file."""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
import tempfile
from typing import Optional

from ..cnf import Formula, Sat, SolveOutcome, SolverOutputError, Unknown, parse_solver_output, write_dimacs

SOLVER_ENV = "EDPSAT_SOLVER"


class SolverConfigError(RuntimeError):
    """The external solver command cannot be run at all."""


class UntrustedSolverError(RuntimeError):
    """The external solver claimed SAT with an assignment that falsifies the formula."""


def default_command() -> Optional[str]:
    return os.environ.get(SOLVER_ENV) or None


def build_argv(command: str, cnf_path: str) -> list[str]:
    """``{cnf}`` in the template is replaced by the path; otherwise the path is appended."""
    argv = shlex.split(command)
    if not argv:
        raise SolverConfigError("empty solver command")
    if any("{cnf}" in a for a in argv):
        return [a.replace("{cnf}", cnf_path) for a in argv]
    return argv + [cnf_path]


def solve_external(
    command: str, f: Formula, timeout: Optional[float] = None, required: int = 0
) -> tuple[SolveOutcome, str]:
    """Returns the parsed outcome and the raw stdout of the solver."""
    argv0 = shlex.split(command)[0] if command.strip() else ""
    if not argv0 or shutil.which(argv0) is None:
        raise SolverConfigError(f"solver executable {argv0!r} not found")
    with tempfile.TemporaryDirectory(prefix="edpsat-") as tmp:
        path = os.path.join(tmp, "formula.cnf")
        write_dimacs(f, path)
        try:
            proc = subprocess.run(
                build_argv(command, path),
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                text=True,
                timeout=timeout,
            )
        except subprocess.TimeoutExpired as exc:
            raw = exc.stdout.decode() if isinstance(exc.stdout, bytes) else (exc.stdout or "")
            return Unknown("budget", f"timeout after {timeout}s"), raw
        except OSError as exc:
            raise SolverConfigError(f"cannot run {argv0!r}: {exc}") from exc
    raw = proc.stdout
    try:
        outcome = parse_solver_output(raw, num_vars=f.num_vars, required=required)
    except SolverOutputError as exc:
        return Unknown("parse", str(exc)), raw
    if isinstance(outcome, Unknown):
        if proc.returncode not in (0, 10, 20):
            return Unknown("crash", f"exit status {proc.returncode}"), raw
        return outcome, raw
    if isinstance(outcome, Sat):
        bad = outcome.assignment.falsified_clauses(f)
        if bad:
            raise UntrustedSolverError(f"claimed model falsifies clause {bad[0]}: {f.clauses[bad[0]]}")
    return outcome, raw
