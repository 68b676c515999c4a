import random

import pytest

from revarith.circuit import (
    CNOT,
    NOT,
    TOFFOLI,
    Circuit,
    CircuitError,
    Gate,
    GateKind,
    Register,
    RegisterLayout,
    append_gate,
    concat,
    emit_swap,
    reverse,
)
from revarith.sim import decode, encode, run_basis, run_batch
from revarith.synth import build_adder

from conftest import random_circuit


def test_append_gate():
    c = append_gate(Circuit(3), TOFFOLI(0, 1, 2))
    assert len(c) == 1
    assert c.gates[0].kind is GateKind.TOFFOLI


def test_duplicate_wire_rejected():
    with pytest.raises(CircuitError, match="duplicate"):
        append_gate(Circuit(3), CNOT(2, 2))


def test_out_of_range_rejected():
    with pytest.raises(CircuitError, match="out of range"):
        append_gate(Circuit(3), NOT(5))


def test_arity_checked():
    with pytest.raises(CircuitError):
        Gate(GateKind.CNOT, (1,))


@pytest.mark.parametrize("width", range(1, 11))
def test_every_gate_is_self_inverse(width):
    gates = [NOT(t) for t in range(width)]
    gates += [CNOT(c, t) for c in range(width) for t in range(width) if c != t]
    if width >= 3:
        gates += [TOFFOLI(0, 1, 2), TOFFOLI(width - 1, 0, width - 2)]
    states = list(range(1 << width))
    for g in gates:
        twice = Circuit(width, (g, g))
        assert run_batch(twice, states) == states


def test_reverse_empty_and_involution():
    assert reverse(Circuit(4)) == Circuit(4)
    c = build_adder(3)
    assert reverse(reverse(c)) == c
    assert reverse(c).gates == c.gates[::-1]
    assert reverse(c).layout == c.layout


@pytest.mark.parametrize("seed", range(5))
def test_circuit_then_reverse_is_identity(seed):
    c = random_circuit(random.Random(seed), 6, 20)
    states = list(range(64))
    assert run_batch(concat(c, reverse(c)), states) == states


def test_concat():
    c = build_adder(2)
    assert concat(c, Circuit(c.num_wires)) == c
    states = list(range(1 << c.num_wires))
    assert run_batch(concat(c, reverse(c)), states) == states
    with pytest.raises(CircuitError):
        concat(Circuit(5), Circuit(6))


def test_layout_must_cover_wires():
    with pytest.raises(CircuitError):
        Circuit(4, layout=RegisterLayout((Register("a", "input_a", 0, 3),)))
    with pytest.raises(CircuitError):
        Circuit(4, layout=RegisterLayout(
            (Register("a", "input_a", 0, 3), Register("b", "input_b", 2, 2))))
    with pytest.raises(CircuitError):
        Register("a", "bogus", 0, 1)


def _two_regs(width):
    return RegisterLayout.packed([("a", "input_a", width), ("b", "input_b", width)])


def test_emit_swap_exchanges_values():
    layout = _two_regs(3)
    swap = emit_swap(layout, "a", "b")
    out = run_basis(swap, encode(layout, {"a": 5, "b": 3}))
    assert decode(layout, out) == {"a": 3, "b": 5}
    out = run_basis(swap, encode(layout, {"a": 6, "b": 6}))
    assert decode(layout, out) == {"a": 6, "b": 6}


@pytest.mark.parametrize("width", [1, 2, 5, 9])
def test_emit_swap_is_three_cnots_per_pair(width):
    swap = emit_swap(_two_regs(width), "a", "b")
    assert len(swap) == 3 * width
    assert all(g.kind is GateKind.CNOT for g in swap)


def test_emit_swap_width_mismatch():
    layout = RegisterLayout.packed([("a", "input_a", 2), ("b", "input_b", 3)])
    with pytest.raises(CircuitError, match="cannot swap"):
        emit_swap(layout, "a", "b")


def test_circuits_are_hashable_values():
    assert hash(build_adder(2)) == hash(build_adder(2))
    assert build_adder(2) == build_adder(2)
