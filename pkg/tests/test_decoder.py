import pytest

from edpsat.cnf import Assignment
from edpsat.core import Sequence, discrepancy
from edpsat.decoder import assignment_for, audit_model, decode_model
from edpsat.encoder import EncodeParams, encode
from edpsat.solver import Sat, solve_internal


def test_decode_example():
    f, vm = encode(EncodeParams(2, 1, encoding_kind="unary"))
    a = Assignment.from_literals([1, -2], vm.num_vars)
    assert decode_model(vm, a).elements == (1, -1)


def test_binary_11_1_models():
    f, vm = encode(EncodeParams(11, 1))
    out = solve_internal(f)
    assert isinstance(out, Sat)
    assert discrepancy(decode_model(vm, out.assignment)).value <= 1


@pytest.mark.parametrize("kind", ["unary", "binary"])
def test_hand_built_model_passes(kind):
    f, vm = encode(EncodeParams(2, 1, encoding_kind=kind))
    a = assignment_for(vm, Sequence.of([1, -1]))
    assert a.satisfies_formula(f)
    assert audit_model(vm, a, 1).passed


@pytest.mark.parametrize("kind", ["unary", "binary"])
def test_flipped_state_is_reported(kind):
    f, vm = encode(EncodeParams(8, 1, encoding_kind=kind))
    a = assignment_for(vm, Sequence.of([1, -1, -1, 1, -1, 1, 1, -1]))
    assert audit_model(vm, a).passed
    target = vm.position_vars(2, 3)[0]
    values = list(a.values)
    values[target] = not values[target]
    report = audit_model(vm, Assignment(values))
    assert not report.passed
    assert {(v.d, v.i) for v in report.violations} == {(2, 3)}


def test_sink_and_param_violations():
    f, vm = encode(EncodeParams(6, 1))
    a = assignment_for(vm, Sequence.of([1, 1, 1, 1, 1, 1]))
    report = audit_model(vm, a)
    kinds = {v.kind for v in report.violations}
    assert "sink" in kinds and "state" in kinds
    assert not audit_model(vm, assignment_for(vm, Sequence.of([1, -1] * 3)), C=2).passed


@pytest.mark.parametrize("kind", ["unary", "binary"])
@pytest.mark.parametrize("l, C", [(11, 1), (40, 2), (30, 3)])
def test_solver_models_pass_audit(kind, l, C):
    f, vm = encode(EncodeParams(l, C, encoding_kind=kind))
    out = solve_internal(f)
    assert audit_model(vm, out.assignment, C).passed
