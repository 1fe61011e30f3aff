"""Exit criteria for the package, one test per criterion.

Each test prints a PASS/FAIL line (collected into the terminal summary).
Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import itertools
import os
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from edpsat.cnf import Formula, Sat, Unknown, Unsat, emit_dimacs, parse_dimacs, parse_solver_output
from edpsat.core import appendix_sequence, discrepancy, parse_sequence, prefix_discrepancies
from edpsat.decoder import audit_model, decode_model
from edpsat.encoder import EncodeParams, encode, encode_binary, encode_unary, stats, streamed_stats
from edpsat.oracle import OracleBudgetExceeded, exists_sequence, max_length
from edpsat.solver import (
    RupProof,
    check_rup,
    solve_external,
    solve_internal,
    solve_with_proof,
    trim_proof,
)

from conftest import ACCEPTANCE_LINES

# conflict budget for the l = 100, C = 2 search; the default configuration
# needs well under 100 conflicts, this leaves a wide margin
DESK_C2_BUDGET = 20_000
PAPER_C3_VARS, PAPER_C3_CLAUSES = 356_048, 4_342_612


@contextmanager
def criterion(name):
    t = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        line = f"[{status}] {name} ({time.perf_counter() - t:.2f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_1_golden_fixture():
    with criterion("1 appendix sequence: length 1160, discrepancy 2, every prefix <= 2, < 1 s"):
        t = time.perf_counter()
        seq = appendix_sequence()
        assert len(seq) == 1160
        assert discrepancy(seq).value == 2
        prefixes = prefix_discrepancies(seq)
        assert len(prefixes) == 1161 and max(prefixes) == 2 and prefixes[-1] == 2
        assert time.perf_counter() - t < 1.0


def test_2_three_way_agreement():
    with criterion("2 oracle = unary = binary for l in 1..16, C in {1,2}; models decode <= C; < 5 min"):
        t = time.perf_counter()
        for C in (1, 2):
            for l in range(1, 17):
                truth = exists_sequence(l, C).exists
                for kind, enc in (("unary", encode_unary), ("binary", encode_binary)):
                    f, vm = enc(EncodeParams(l, C, encoding_kind=kind))
                    out = solve_internal(f)
                    assert not isinstance(out, Unknown), (l, C, kind)
                    assert isinstance(out, Sat) == truth, (l, C, kind)
                    if isinstance(out, Sat):
                        assert discrepancy(decode_model(vm, out.assignment)).value <= C
                        assert audit_model(vm, out.assignment, C).passed
        assert time.perf_counter() - t < 300


def test_3_c1_boundary_two_paths():
    with criterion("3 C=1 boundary: oracle max_length(1, 64) equals SAT/UNSAT boundary of binary encoding; < 1 min"):
        t = time.perf_counter()
        res = max_length(1, 64)
        assert not res.reached_cap
        l = 1
        while isinstance(solve_internal(encode_binary(EncodeParams(l, 1))[0]), Sat):
            l += 1
            assert l <= 64
        sat_boundary = l - 1
        assert sat_boundary == res.length
        assert isinstance(solve_internal(encode_binary(EncodeParams(res.length + 1, 1))[0]), Unsat)
        assert time.perf_counter() - t < 60


def test_4_desk_scale_c2():
    with criterion(f"4 l=100, C=2 discrepancy-2 sequence within {DESK_C2_BUDGET} conflicts, re-verified"):
        f, vm = encode_binary(EncodeParams(100, 2))
        out = solve_internal(f, budget=DESK_C2_BUDGET)
        assert isinstance(out, Sat)
        seq = decode_model(vm, out.assignment)
        assert len(seq) == 100 and discrepancy(seq).value <= 2
        assert audit_model(vm, out.assignment).passed


def truth_table_sat(f):
    """Vectorised enumeration of all 2^n assignments."""
    n = f.num_vars
    rows = np.arange(1 << n, dtype=np.int64)
    bits = ((rows[:, None] >> np.arange(n)) & 1).astype(bool)
    alive = np.ones(1 << n, dtype=bool)
    for clause in f.clauses:
        sat = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            col = bits[:, abs(lit) - 1]
            sat |= col if lit > 0 else ~col
        alive &= sat
        if not alive.any():
            return False
    return bool(alive.any())


def test_5_excluded_results_and_enumeration_equivalence():
    with criterion("5 l=1161 and C=3 results excluded; solver = truth table on all formulas with <= 16 vars"):
        # the excluded theorem is out of the oracle's reach and must say so
        with pytest.raises(OracleBudgetExceeded):
            exists_sequence(1161, 2, budget=50_000)
        rng = random.Random(20140213)
        formulas = []
        for n in range(1, 17):
            for _ in range(12):
                m = rng.randint(1, int(5 * n) + 2)
                clauses = []
                for _ in range(m):
                    k = rng.randint(1, min(3, n))
                    vs = rng.sample(range(1, n + 1), k)
                    clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
                formulas.append(Formula(n, clauses))
        for l, C, kind in itertools.product(range(1, 8), (1, 2), ("unary", "binary")):
            f, _ = encode(EncodeParams(l, C, encoding_kind=kind))
            if f.num_vars <= 16:
                formulas.append(f)
        sat_count = 0
        for f in formulas:
            out = solve_internal(f)
            expected = truth_table_sat(f)
            assert isinstance(out, Sat) == expected
            assert not isinstance(out, Unknown)
            if expected:
                sat_count += 1
                assert out.assignment.satisfies_formula(f)
        # the corpus must exercise both answers
        assert 0 < sat_count < len(formulas)


@pytest.fixture(scope="module")
def unary_12_1_proof():
    f, _ = encode_unary(EncodeParams(12, 1, encoding_kind="unary"))
    out, proof = solve_with_proof(f)
    assert isinstance(out, Unsat)
    return f, trim_proof(f, proof)


def test_6a_certificate_accepted(unary_12_1_proof):
    with criterion("6a solve_internal proof for encode_unary(12, 1) accepted by check_rup"):
        f, proof = unary_12_1_proof
        assert proof.steps[-1] == (False, ())
        assert check_rup(f, proof).accepted
        assert check_rup(f, RupProof.from_text(proof.to_text())).accepted


def test_6b_deleting_any_clause_rejected(unary_12_1_proof):
    with criterion("6b deleting any single proof clause makes check_rup reject"):
        t = time.perf_counter()
        f, proof = unary_12_1_proof
        for i in range(len(proof.steps)):
            mutant = RupProof(proof.steps[:i] + proof.steps[i + 1 :])
            assert not check_rup(f, mutant).accepted, f"deleting step {i + 1} still checks"
        assert time.perf_counter() - t < 60


def test_6c_flipping_any_literal_rejected(unary_12_1_proof):
    with criterion("6c flipping any single proof literal makes check_rup reject"):
        t = time.perf_counter()
        f, proof = unary_12_1_proof
        survivors = []
        for i, (deleted, clause) in enumerate(proof.steps):
            for k in range(len(clause)):
                flipped = clause[:k] + (-clause[k],) + clause[k + 1 :]
                mutant = RupProof(proof.steps[:i] + [(deleted, flipped)] + proof.steps[i + 1 :])
                if check_rup(f, mutant).accepted:
                    survivors.append((i + 1, clause, flipped))
        assert time.perf_counter() - t < 60
        assert not survivors, f"flipped proofs still accepted: {survivors}"


def random_formula(rng):
    n = rng.randint(0, 40)
    if n == 0:
        return Formula(0, [])
    clauses = []
    for _ in range(rng.randint(0, 60)):
        k = rng.randint(1, 8)
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(k)))
    return Formula(n, clauses)


SOLVER_OUTPUT_CORPUS = [
    ("s UNSATISFIABLE\n", 3, 0, "UNSAT", None),
    ("c solver 1.0\ns SATISFIABLE\nv 1 -2 3 0\n", 3, 3, "SAT", [1, -2, 3]),
    ("s SATISFIABLE\nv 1 -2\nv 3 0\n", 3, 3, "SAT", [1, -2, 3]),
    # don't-care variables 4 and 6 omitted, default to false
    ("s SATISFIABLE\nv -1 2 3 5 0\n", 6, 3, "SAT", [-1, 2, 3, -4, 5, -6]),
    ("s SATISFIABLE\nv 2 0\nv 1 0\n", 2, 2, "SAT", [1, 2]),
    ("c timeout after 5s\n", 3, 0, "UNKNOWN", None),
    ("s UNKNOWN\n", 3, 0, "UNKNOWN", None),
    ("", 3, 0, "UNKNOWN", None),
]


def test_7_formats():
    with criterion("7 DIMACS round trip on 1000 random formulas; solver output corpus"):
        rng = random.Random(7)
        for _ in range(1000):
            f = random_formula(rng)
            text = emit_dimacs(f)
            g = parse_dimacs(text)
            assert g == f and emit_dimacs(g) == text
        for text, n, required, status, lits in SOLVER_OUTPUT_CORPUS:
            out = parse_solver_output(text, num_vars=n, required=required)
            assert out.status == status, text
            if lits is not None:
                assert out.assignment.literals() == lits


def test_8_c3_instance_size_informational():
    with criterion("8 (informational) encode_binary(13000, 3) size vs reported 356048 vars / 4342612 clauses"):
        num_vars, num_clauses = streamed_stats(EncodeParams(13000, 3))
        line = (
            f"    encode_binary(13000, 3): {num_vars} variables, {num_clauses} clauses "
            f"(reported: {PAPER_C3_VARS}, {PAPER_C3_CLAUSES}; "
            f"clause difference {num_clauses - PAPER_C3_CLAUSES})"
        )
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert PAPER_C3_VARS / 2 <= num_vars <= PAPER_C3_VARS * 2
        assert PAPER_C3_CLAUSES / 2 <= num_clauses <= PAPER_C3_CLAUSES * 2


@pytest.mark.skipif(not os.environ.get("EDPSAT_SOLVER"), reason="needs EDPSAT_SOLVER")
def test_external_1160():
    with criterion("env-gated: external solver finds a length-1160 discrepancy-2 sequence"):
        f, vm = encode_binary(EncodeParams(1160, 2))
        out, _ = solve_external(os.environ["EDPSAT_SOLVER"], f, required=1160)
        assert isinstance(out, Sat)
        seq = decode_model(vm, out.assignment)
        assert discrepancy(seq).value <= 2
        assert parse_sequence(str(seq)) == seq
