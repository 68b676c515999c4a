"""Reversible circuit IR: elementary gates, register layouts and flat gate lists.

Only three gates exist: NOT, CNOT and TOFFOLI.  Each is a permutation of the
computational basis and is its own inverse, so reversing a circuit is just
reversing its gate list.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class CircuitError(ValueError):
    """Raised for malformed gates, layouts or circuit combinations."""


class GateKind(enum.Enum):
    NOT = "NOT"
    CNOT = "CNOT"
    TOFFOLI = "TOFF"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {GateKind.NOT: 1, GateKind.CNOT: 2, GateKind.TOFFOLI: 3}


@dataclass(frozen=True, slots=True)
class Gate:
    """An elementary gate. The last wire is the target, the others are controls."""

    kind: GateKind
    wires: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.wires) != self.kind.arity:
            raise CircuitError(
                f"{self.kind.name} takes {self.kind.arity} wire(s), got {len(self.wires)}"
            )
        if any(w < 0 for w in self.wires):
            raise CircuitError(f"negative wire index in {self.wires}")
        if len(set(self.wires)) != len(self.wires):
            raise CircuitError(f"duplicate wire index in {self.kind.name}{self.wires}")

    @property
    def target(self) -> int:
        return self.wires[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        return self.wires[:-1]

    def __str__(self) -> str:
        return " ".join([self.kind.value, *map(str, self.wires)])


def NOT(t: int) -> Gate:
    return Gate(GateKind.NOT, (t,))


def CNOT(c: int, t: int) -> Gate:
    return Gate(GateKind.CNOT, (c, t))


def TOFFOLI(c1: int, c2: int, t: int) -> Gate:
    return Gate(GateKind.TOFFOLI, (c1, c2, t))


ROLES = (
    "input_a",
    "input_b",
    "input_x",
    "result",
    "carry",
    "modulus_temp",
    "mult_temp",
    "exp_temp",
    "overflow_t",
    "control",
)


@dataclass(frozen=True, slots=True)
class Register:
    """A named, contiguous wire range. Wire ``start`` holds the least significant bit."""

    name: str
    role: str
    start: int
    width: int

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise CircuitError(f"unknown register role {self.role!r}")
        if not self.name or any(ch.isspace() for ch in self.name):
            raise CircuitError(f"invalid register name {self.name!r}")
        if self.start < 0 or self.width < 1:
            raise CircuitError(f"register {self.name!r} has invalid range")

    @property
    def wires(self) -> range:
        return range(self.start, self.start + self.width)


@dataclass(frozen=True, slots=True)
class RegisterLayout:
    """Ordered registers. An empty layout marks an unstructured circuit."""

    registers: tuple[Register, ...] = ()

    @classmethod
    def packed(cls, spec: Iterable[tuple[str, str, int]]) -> "RegisterLayout":
        """Lay out ``(name, role, width)`` triples back to back from wire 0.

        Zero-width entries are dropped (e.g. the carry register when n = 1).
        """
        regs = []
        start = 0
        for name, role, width in spec:
            if width == 0:
                continue
            regs.append(Register(name, role, start, width))
            start += width
        return cls(tuple(regs))

    @property
    def num_wires(self) -> int:
        return sum(r.width for r in self.registers)

    def __iter__(self):
        return iter(self.registers)

    def __len__(self) -> int:
        return len(self.registers)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.registers)

    def __getitem__(self, name: str) -> Register:
        for r in self.registers:
            if r.name == name:
                return r
        raise KeyError(name)

    def by_role(self, role: str) -> list[Register]:
        return [r for r in self.registers if r.role == role]

    def validate(self, num_wires: int) -> None:
        if not self.registers:
            return
        names = [r.name for r in self.registers]
        if len(set(names)) != len(names):
            raise CircuitError("duplicate register names in layout")
        covered = sorted(w for r in self.registers for w in r.wires)
        if covered != list(range(num_wires)):
            raise CircuitError(
                f"register ranges must be disjoint and cover wires 0..{num_wires - 1}"
            )


@dataclass(frozen=True, slots=True)
class Span:
    """Provenance tag for gates ``start <= i < end`` (e.g. ``"CARRY stage 3"``)."""

    start: int
    end: int
    label: str


@dataclass(frozen=True)
class Circuit:
    """An immutable, flat list of gates over ``num_wires`` wires."""

    num_wires: int
    gates: tuple[Gate, ...] = ()
    layout: RegisterLayout = field(default_factory=RegisterLayout)
    spans: tuple[Span, ...] = ()

    def __post_init__(self) -> None:
        if self.num_wires < 1:
            raise CircuitError("a circuit needs at least one wire")
        for g in self.gates:
            if max(g.wires) >= self.num_wires:
                raise CircuitError(
                    f"wire index {max(g.wires)} out of range for {self.num_wires} wires"
                )
        self.layout.validate(self.num_wires)
        for s in self.spans:
            if not 0 <= s.start <= s.end <= len(self.gates):
                raise CircuitError(f"span {s.label!r} out of gate range")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def register(self, name: str) -> Register:
        return self.layout[name]

    def masks(self):
        """Gate list compiled to (ctrl1, ctrl2, target) int arrays, -1 for no control."""
        cached = self.__dict__.get("_masks")
        if cached is None:
            import numpy as np

            arr = np.full((3, len(self.gates)), -1, dtype=np.int32)
            for i, g in enumerate(self.gates):
                w = g.wires
                arr[2, i] = w[-1]
                if len(w) > 1:
                    arr[0, i] = w[0]
                if len(w) > 2:
                    arr[1, i] = w[1]
            cached = (arr[0], arr[1], arr[2])
            object.__setattr__(self, "_masks", cached)
        return cached


def append_gate(circuit: Circuit, gate: Gate) -> Circuit:
    if max(gate.wires) >= circuit.num_wires:
        raise CircuitError(
            f"wire index {max(gate.wires)} out of range for {circuit.num_wires} wires"
        )
    return Circuit(circuit.num_wires, circuit.gates + (gate,), circuit.layout, circuit.spans)


def reverse(circuit: Circuit) -> Circuit:
    """Run ``circuit`` backwards. Every elementary gate is self-inverse."""
    total = len(circuit.gates)
    spans = tuple(Span(total - s.end, total - s.start, s.label) for s in reversed(circuit.spans))
    return Circuit(circuit.num_wires, circuit.gates[::-1], circuit.layout, spans)


def concat(first: Circuit, second: Circuit) -> Circuit:
    if first.num_wires != second.num_wires:
        raise CircuitError(
            f"cannot concatenate circuits on {first.num_wires} and {second.num_wires} wires"
        )
    if first.layout.registers and second.layout.registers and first.layout != second.layout:
        raise CircuitError("cannot concatenate circuits with different register layouts")
    layout = first.layout if first.layout.registers else second.layout
    offset = len(first.gates)
    spans = first.spans + tuple(
        Span(s.start + offset, s.end + offset, s.label) for s in second.spans
    )
    return Circuit(first.num_wires, first.gates + second.gates, layout, spans)


def swap_gates(wires_a: Sequence[int], wires_b: Sequence[int]) -> list[Gate]:
    """Three CNOTs per wire pair exchange the two wire groups."""
    if len(wires_a) != len(wires_b):
        raise CircuitError(f"swap width mismatch: {len(wires_a)} vs {len(wires_b)}")
    gates = []
    for a, b in zip(wires_a, wires_b):
        gates += [CNOT(a, b), CNOT(b, a), CNOT(a, b)]
    return gates


def emit_swap(layout: RegisterLayout, reg_a: str, reg_b: str) -> Circuit:
    """Circuit exchanging the contents of two equal-width registers of ``layout``."""
    ra, rb = layout[reg_a], layout[reg_b]
    if ra.width != rb.width:
        raise CircuitError(f"cannot swap {reg_a!r} ({ra.width}) with {reg_b!r} ({rb.width})")
    gates = tuple(swap_gates(ra.wires, rb.wires))
    return Circuit(layout.num_wires, gates, layout)


@dataclass(frozen=True, slots=True)
class GateCounts:
    not_count: int = 0
    cnot_count: int = 0
    toffoli_count: int = 0

    @property
    def total(self) -> int:
        return self.not_count + self.cnot_count + self.toffoli_count

    def __add__(self, other: "GateCounts") -> "GateCounts":
        return GateCounts(
            self.not_count + other.not_count,
            self.cnot_count + other.cnot_count,
            self.toffoli_count + other.toffoli_count,
        )
