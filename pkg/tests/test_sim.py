import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from revarith.circuit import CNOT, NOT, TOFFOLI, Circuit, RegisterLayout
from revarith.sim import (
    BasisState,
    SimulationError,
    SparseState,
    decode,
    encode,
    run_basis,
    run_batch,
    run_sparse,
)
from revarith.synth import build_adder, build_modexp

from conftest import random_circuit


def test_toffoli_truth_table():
    c = Circuit(3, (TOFFOLI(0, 1, 2),))
    assert run_basis(c, BasisState(3, 0b011)).bits == (1, 1, 1)
    for v in range(8):
        out = run_basis(c, BasisState(3, v)).value
        assert out == (v ^ 0b100 if v & 0b011 == 0b011 else v)


def test_cnot_copies_control():
    c = Circuit(2, (CNOT(0, 1),))
    assert run_basis(c, BasisState(2, 0b01)).value == 0b11
    assert run_basis(c, BasisState(2, 0b00)).value == 0b00


def test_not_flips():
    assert run_basis(Circuit(2, (NOT(1),)), BasisState(2, 0)).value == 0b10


def test_empty_circuit_is_identity():
    for v in range(16):
        assert run_basis(Circuit(4), BasisState(4, v)).value == v


def test_width_mismatch():
    with pytest.raises(SimulationError):
        run_basis(Circuit(3), BasisState(4, 0))
    with pytest.raises(SimulationError):
        run_batch(Circuit(3), [8])


def test_encode_value_six_little_endian():
    layout = RegisterLayout.packed([("r", "result", 3)])
    state = encode(layout, {"r": 6})
    assert state.bits == (0, 1, 1)
    assert str(state) == "110"


def test_encode_zero_and_overflow():
    layout = RegisterLayout.packed([("a", "input_a", 2), ("b", "input_b", 3)])
    assert encode(layout, {}).value == 0
    with pytest.raises(SimulationError, match="overflows"):
        encode(layout, {"a": 4})


@given(st.lists(st.integers(1, 12), min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_encode_decode_round_trip(widths, rnd):
    layout = RegisterLayout.packed([(f"r{i}", "result", w) for i, w in enumerate(widths)])
    values = {f"r{i}": rnd.randrange(1 << w) for i, w in enumerate(widths)}
    assert decode(layout, encode(layout, values)) == values


def test_single_term_sparse_matches_basis():
    c = build_adder(3)
    for v in range(0, 1 << c.num_wires, 7):
        out = run_sparse(c, SparseState(c.num_wires, {v: 1.0}))
        assert out.terms == {run_basis(c, BasisState(c.num_wires, v)).value: 1.0}


def test_sparse_modexp_superposition():
    c = build_modexp(4, 8, 7, 15)
    L = c.layout
    psi = SparseState.uniform(c.num_wires, [encode(L, {"x": 1}).value, encode(L, {"x": 3}).value])
    out = run_sparse(c, psi)
    amp = 1 / math.sqrt(2)
    assert out.terms == {
        encode(L, {"x": 1, "result": 7}).value: amp,
        encode(L, {"x": 3, "result": 13}).value: amp,
    }


def test_sparse_rejects_unnormalized():
    with pytest.raises(SimulationError, match="normalized"):
        run_sparse(Circuit(2), SparseState(2, {0: 1.0, 1: 1.0}))


def test_sparse_drops_zero_amplitudes():
    assert SparseState(2, {0: 1.0, 3: 0}).terms == {0: 1.0}


@settings(deadline=None)
@given(st.integers(0, 2**32))
def test_sparse_norm_and_amplitude_multiset_preserved(seed):
    rng = random.Random(seed)
    c = random_circuit(rng, 10, 40)
    values = rng.sample(range(1 << 10), 8)
    raw = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in values]
    norm = math.sqrt(sum(abs(a) ** 2 for a in raw))
    psi = SparseState(10, {v: a / norm for v, a in zip(values, raw)})
    out = run_sparse(c, psi)
    assert len(out.terms) == len(psi.terms)
    assert abs(out.norm() - 1) < 1e-12
    assert sorted(out.terms.values(), key=lambda z: (z.real, z.imag)) == sorted(
        psi.terms.values(), key=lambda z: (z.real, z.imag))


def test_linearity_on_disjoint_terms():
    rng = random.Random(3)
    c = random_circuit(rng, 8, 30)
    s, t = 17, 200
    alpha, beta = 0.6, 0.8j
    both = run_sparse(c, SparseState(8, {s: alpha, t: beta}))
    one = run_sparse(c, SparseState(8, {s: 1}))
    two = run_sparse(c, SparseState(8, {t: 1}))
    combined = {k: alpha * v for k, v in one.terms.items()}
    for k, v in two.terms.items():
        combined[k] = combined.get(k, 0) + beta * v
    assert both.terms == combined


@pytest.mark.parametrize("width", [5, 12])
def test_sparse_agrees_with_basis_everywhere(width):
    c = random_circuit(random.Random(width), width, 50)
    ins = list(range(1 << width))
    outs = run_batch(c, ins)
    for v in ins[:: max(1, len(ins) // 300)]:
        assert run_sparse(c, SparseState(width, {v: 1})).terms == {outs[v]: 1}


def test_wide_circuit_beyond_one_word():
    # 150 wires: several 64-bit chunks per state
    rng = random.Random(11)
    c = random_circuit(rng, 150, 400)
    states = [rng.getrandbits(150) for _ in range(70)]
    from revarith.sim import apply_int

    assert run_batch(c, states) == [apply_int(c, s) for s in states]
