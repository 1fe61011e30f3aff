"""Deciding encoded formulas: internal CDCL, external subprocess adapter, RUP checking."""

from ..cnf import Sat, SolveOutcome, Unknown, Unsat
from .cdcl import DEFAULT_CONFLICT_BUDGET, CDCLSolver, SolverError, solve_internal, solve_with_proof
from .external import SOLVER_ENV, SolverConfigError, UntrustedSolverError, solve_external
from .proof import RupProof, RupResult, check_rup, trim_proof
