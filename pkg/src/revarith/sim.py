"""Exact simulation on computational basis states and sparse superpositions.

All gates permute basis states, so a superposition evolves term by term and
amplitudes are carried along untouched.  Batches of basis states are
transposed into bit-sliced lanes (one row per wire, 64 states per word) and
pushed through :mod:`revarith.kernel`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernel
from .circuit import Circuit, RegisterLayout

NORM_TOL = 1e-12


class SimulationError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class BasisState:
    """``width`` wires; bit ``w`` of ``value`` is the state of wire ``w``."""

    width: int
    value: int = 0

    def __post_init__(self):
        if self.value < 0 or self.value >> self.width:
            raise SimulationError(f"value {self.value} does not fit {self.width} wires")

    def bit(self, wire: int) -> int:
        return (self.value >> wire) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(w) for w in range(self.width))

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")


@dataclass(frozen=True)
class SparseState:
    """Basis-state value -> complex amplitude, unit norm, no zero entries."""

    width: int
    terms: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for value, amp in self.terms.items():
            if value < 0 or value >> self.width:
                raise SimulationError(f"basis value {value} does not fit {self.width} wires")
            if amp != 0:
                clean[value] = complex(amp)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def uniform(cls, width: int, values: Iterable[int]) -> "SparseState":
        values = list(values)
        if len(set(values)) != len(values):
            raise SimulationError("duplicate basis terms")
        amp = 1 / math.sqrt(len(values))
        return cls(width, {v: amp for v in values})

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.terms.values()))

    def check_normalized(self, tol: float = NORM_TOL) -> None:
        if abs(self.norm() - 1.0) >= tol:
            raise SimulationError(f"state is not normalized (norm = {self.norm()!r})")


def encode(layout: RegisterLayout, values: Mapping[str, int]) -> BasisState:
    """Load register values into a basis state; unnamed registers are zero."""
    state = 0
    for name, value in values.items():
        reg = layout[name]
        if value < 0 or value >> reg.width:
            raise SimulationError(
                f"value {value} overflows register {name!r} of width {reg.width}"
            )
        state |= value << reg.start
    return BasisState(layout.num_wires, state)


def decode(layout: RegisterLayout, state: BasisState | int) -> dict[str, int]:
    value = state.value if isinstance(state, BasisState) else state
    return {r.name: (value >> r.start) & ((1 << r.width) - 1) for r in layout}


def format_registers(layout: RegisterLayout, state: BasisState | int) -> str:
    regs = decode(layout, state)
    return "  ".join(
        f"{r.name}={regs[r.name]} ({regs[r.name]:0{r.width}b})" for r in layout
    )


# -- bit-slice transposition ---------------------------------------------------


def _to_lanes(states: Sequence[int], width: int) -> np.ndarray:
    n_states = len(states)
    n_words = max(1, -(-n_states // 64))
    lanes = np.zeros((width, n_words), dtype=np.uint64)
    pad = 64 * n_words - n_states
    for c in range(-(-width // 64)):
        if width <= 64:
            chunk = np.array(states, dtype=np.uint64)
        else:
            chunk = np.array([(s >> (64 * c)) & 0xFFFFFFFFFFFFFFFF for s in states], dtype=np.uint64)
        wires = np.arange(64 * c, min(64 * c + 64, width))
        shifts = (wires - 64 * c).astype(np.uint64)
        bits = ((chunk[None, :] >> shifts[:, None]) & np.uint64(1)).astype(np.uint8)
        if pad:
            bits = np.pad(bits, ((0, 0), (0, pad)))
        packed = np.packbits(bits, axis=1, bitorder="little")
        lanes[wires] = packed.view("<u8")
    return lanes


def _from_lanes(lanes: np.ndarray, n_states: int) -> list[int]:
    width = lanes.shape[0]
    bits = np.unpackbits(
        np.ascontiguousarray(lanes).view(np.uint8), axis=1, bitorder="little"
    )[:, :n_states]
    out = None
    for c in range(-(-width // 64)):
        lo, hi = 64 * c, min(64 * c + 64, width)
        shifts = np.arange(hi - lo, dtype=np.uint64)
        vals = np.bitwise_or.reduce(bits[lo:hi].astype(np.uint64) << shifts[:, None], axis=0)
        vals = vals.tolist()
        if out is None:
            out = vals
        else:
            out = [o | (v << (64 * c)) for o, v in zip(out, vals)]
    return out


def run_batch(circuit: Circuit, states: Sequence[int], backend: str | None = None) -> list[int]:
    """Simulate many basis states (given as ints) at once."""
    if not len(states):
        return []
    limit = 1 << circuit.num_wires
    for s in states:
        if s < 0 or s >= limit:
            raise SimulationError(f"state {s} does not fit {circuit.num_wires} wires")
    lanes = _to_lanes(states, circuit.num_wires)
    apply = kernel.apply_gates if backend is None else kernel.get_backend(backend)
    apply(lanes, *circuit.masks())
    return _from_lanes(lanes, len(states))


def run_basis(circuit: Circuit, state: BasisState) -> BasisState:
    if state.width != circuit.num_wires:
        raise SimulationError(
            f"state has {state.width} wires, circuit has {circuit.num_wires}"
        )
    return BasisState(state.width, run_batch(circuit, [state.value])[0])


def run_sparse(circuit: Circuit, state: SparseState) -> SparseState:
    if state.width != circuit.num_wires:
        raise SimulationError(
            f"state has {state.width} wires, circuit has {circuit.num_wires}"
        )
    state.check_normalized()
    inputs = list(state.terms)
    outputs = run_batch(circuit, inputs)
    return SparseState(state.width, {o: state.terms[i] for i, o in zip(inputs, outputs)})


def apply_int(circuit: Circuit, value: int, start: int = 0, stop: int | None = None) -> int:
    """Gate-by-gate simulation of ``gates[start:stop]`` on one state."""
    for g in circuit.gates[start:stop]:
        w = g.wires
        if len(w) == 1 or all((value >> c) & 1 for c in w[:-1]):
            value ^= 1 << w[-1]
    return value


def span_depths(circuit: Circuit) -> list[int]:
    """Nesting depth of each span (0 for outermost)."""
    order = sorted(range(len(circuit.spans)),
                   key=lambda i: (circuit.spans[i].start, -circuit.spans[i].end, i))
    depths = [0] * len(order)
    stack: list[int] = []
    for i in order:
        s = circuit.spans[i]
        while stack and circuit.spans[stack[-1]].end < s.end:
            stack.pop()
        while stack and not circuit.spans[stack[-1]].start <= s.start:
            stack.pop()
        depths[i] = len(stack)
        stack.append(i)
    return depths


def trace(circuit: Circuit, state: BasisState, max_depth: int = 1) -> list[tuple[int, str, int]]:
    """States at span boundaries: ``(gate_index, "begin/end label", state_value)``."""
    events = []
    for s, d in zip(circuit.spans, span_depths(circuit)):
        if d <= max_depth:
            events.append((s.start, 1, d, f"begin {s.label}"))
            events.append((s.end, 0, -d, f"end {s.label}"))
    events.sort(key=lambda e: e[:3])
    out = []
    pos, value = 0, state.value
    for idx, _, _, label in events:
        value = apply_int(circuit, value, pos, idx)
        pos = idx
        out.append((idx, label, value))
    return out
