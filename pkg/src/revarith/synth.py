"""Synthesis of the arithmetic networks from NOT, CNOT and TOFFOLI gates.

Networks, in increasing order of size:

* plain adder      ``|a, b, 0> -> |a, a+b, 0>``        (b has n+1 wires)
* subtractor       the adder run backwards, ``|x, y> -> |x, (y-x) mod 2^(n+1)>``
* modular adder    ``|a, b> -> |a, (a+b) mod N>``      (modulus register preloaded with N)
* controlled mult  ``|c; x, 0> -> |c; x, a*x mod N>`` if c else ``|c; x, x>``
* modular exp      ``|x, 0> -> |x, a^x mod N>``        (all temporaries start and end at 0)

Register wire lists are little-endian everywhere.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .circuit import (
    CNOT,
    NOT,
    TOFFOLI,
    Circuit,
    CircuitError,
    Gate,
    RegisterLayout,
    Span,
    reverse,
    swap_gates,
)
from .numtheory import mod_inverse, mod_pow

SWAP_MODES = ("gates", "relabel")


class Builder:
    """Mutable gate list with nested provenance spans."""

    def __init__(self, num_wires: int):
        self.num_wires = num_wires
        self.gates: list[Gate] = []
        self.spans: list[Span] = []

    def add(self, gate: Gate) -> None:
        self.gates.append(gate)

    def extend(self, gates: Sequence[Gate]) -> None:
        self.gates.extend(gates)

    @contextlib.contextmanager
    def block(self, label: str, reverse: bool = False):
        start = len(self.gates)
        n_spans = len(self.spans)
        yield
        end = len(self.gates)
        if reverse:
            self.gates[start:end] = self.gates[start:end][::-1]
            inner = [
                Span(start + end - s.end, start + end - s.start, s.label)
                for s in reversed(self.spans[n_spans:])
            ]
            self.spans[n_spans:] = inner
        self.spans.insert(n_spans, Span(start, end, label))

    def circuit(self, layout: RegisterLayout) -> Circuit:
        return Circuit(self.num_wires, tuple(self.gates), layout, tuple(self.spans))


# -- CARRY / SUM blocks ------------------------------------------------------


def carry_gates(c_in: Optional[int], a: int, b: int, c_out: int) -> list[Gate]:
    """c_out ^= majority(c_in, a, b); leaves b holding a XOR b.

    With ``c_in=None`` the carry-in is the constant 0 and its Toffoli is dropped.
    """
    gates = [TOFFOLI(a, b, c_out), CNOT(a, b)]
    if c_in is not None:
        gates.append(TOFFOLI(c_in, b, c_out))
    return gates


def sum_gates(c_in: Optional[int], a: int, b: int) -> list[Gate]:
    gates = [CNOT(a, b)]
    if c_in is not None:
        gates.append(CNOT(c_in, b))
    return gates


def _fragment(gates: list[Gate], *wires: Optional[int]) -> Circuit:
    used = [w for w in wires if w is not None]
    if len(set(used)) != len(used):
        raise CircuitError(f"duplicate wires {used}")
    return Circuit(max(used) + 1, tuple(gates))


def build_carry(c_in: Optional[int], a_i: int, b_i: int, c_out: int) -> Circuit:
    return _fragment(carry_gates(c_in, a_i, b_i, c_out), c_in, a_i, b_i, c_out)


def build_sum(c_in: Optional[int], a_i: int, b_i: int) -> Circuit:
    return _fragment(sum_gates(c_in, a_i, b_i), c_in, a_i, b_i)


# -- emitters working on explicit wire lists ---------------------------------


def _carry_wires(n: int, carry: Sequence[int], b: Sequence[int]):
    """Carry-in and carry-out wire of every bit position.

    ``carry`` holds c_1..c_{n-1} (compact) or c_0..c_{n-1} (full); the final
    carry-out is the top wire of b.
    """
    if len(carry) == n:
        c = list(carry)
    else:
        c = [None, *carry]
    c_out = c[1:] + [b[n]]
    return c, c_out


def emit_adder(bld: Builder, a: Sequence[int], b: Sequence[int], carry: Sequence[int]) -> None:
    n = len(a)
    c_in, c_out = _carry_wires(n, carry, b)
    with bld.block("carries"):
        for i in range(n):
            bld.extend(carry_gates(c_in[i], a[i], b[i], c_out[i]))
    with bld.block("sums"):
        bld.add(CNOT(a[n - 1], b[n - 1]))
        bld.extend(sum_gates(c_in[n - 1], a[n - 1], b[n - 1]))
        for i in range(n - 2, -1, -1):
            bld.extend(carry_gates(c_in[i], a[i], b[i], c_out[i])[::-1])
            bld.extend(sum_gates(c_in[i], a[i], b[i]))


def emit_subtractor(bld: Builder, a, b, carry) -> None:
    with bld.block("reversed adder", reverse=True):
        emit_adder(bld, a, b, carry)


def emit_modular_adder(
    bld: Builder,
    N: int,
    a: Sequence[int],
    b: Sequence[int],
    carry: Sequence[int],
    modulus: Sequence[int],
    t: int,
    swap_mode: str = "gates",
) -> None:
    n = len(a)
    top = b[n]
    n_bits = [j for j in range(n) if (N >> j) & 1]
    first, spare = list(a), list(modulus)

    def swap(label):
        nonlocal first, spare
        with bld.block(label):
            if swap_mode == "gates":
                bld.extend(swap_gates(first, spare))
            else:
                first, spare = spare, first

    with bld.block("add a"):
        emit_adder(bld, first, b, carry)
    swap("swap a <-> N")
    with bld.block("subtract N"):
        emit_subtractor(bld, first, b, carry)
    with bld.block("record overflow in t"):
        # t = 1 when no underflow, i.e. N really had to be subtracted
        bld.extend([NOT(top), CNOT(top, t), NOT(top)])
    with bld.block("clear N if t"):
        bld.extend(CNOT(t, first[j]) for j in n_bits)
    with bld.block("add back N or 0"):
        emit_adder(bld, first, b, carry)
    with bld.block("restore N if t"):
        bld.extend(CNOT(t, first[j]) for j in n_bits)
    swap("swap N <-> a")
    with bld.block("subtract a"):
        emit_subtractor(bld, first, b, carry)
    with bld.block("reset t"):
        bld.add(CNOT(top, t))
    with bld.block("re-add a"):
        emit_adder(bld, first, b, carry)


def emit_cmult(
    bld: Builder,
    a: int,
    N: int,
    control: int,
    x: Sequence[int],
    result: Sequence[int],
    addend: Sequence[int],
    carry: Sequence[int],
    modulus: Sequence[int],
    t: int,
    swap_mode: str = "gates",
) -> None:
    n = len(x)
    for i, k in enumerate(stage_constants(a, N, n)):
        loads = [TOFFOLI(control, x[i], addend[j]) for j in range(n) if (k >> j) & 1]
        with bld.block(f"bit {i}: load {k}"):
            bld.extend(loads)
        with bld.block(f"bit {i}: modular add"):
            emit_modular_adder(bld, N, addend, result, carry, modulus, t, swap_mode)
        with bld.block(f"bit {i}: unload {k}"):
            bld.extend(loads)
    with bld.block("copy x if not c"):
        bld.add(NOT(control))
        bld.extend(TOFFOLI(control, x[j], result[j]) for j in range(n))
        bld.add(NOT(control))


def stage_constants(a: int, N: int, n: int) -> list[int]:
    """Addends (2^i * a) mod N of the controlled multiplier."""
    return [(a << i) % N for i in range(n)]


# -- specs ---------------------------------------------------------------------


def _check_common(n: int, swap_mode: str) -> None:
    if n < 1:
        raise ValueError(f"bit width n must be >= 1, got {n}")
    if swap_mode not in SWAP_MODES:
        raise ValueError(f"swap mode must be one of {SWAP_MODES}, got {swap_mode!r}")


def _check_modulus(n: int, N: int) -> None:
    if not 2 <= N < (1 << n):
        raise ValueError(f"modulus N={N} must satisfy 2 <= N < 2^n = {1 << n}")


def _carry_width(n: int, full_carry: bool) -> int:
    return n if full_carry else n - 1


@dataclass(frozen=True)
class AdderSpec:
    n: int
    full_carry: bool = False
    kind = "adder"

    def __post_init__(self):
        _check_common(self.n, "gates")

    def layout(self) -> RegisterLayout:
        n = self.n
        return RegisterLayout.packed(
            [("a", "input_a", n), ("b", "input_b", n + 1),
             ("carry", "carry", _carry_width(n, self.full_carry))]
        )

    def preload(self) -> dict[str, int]:
        return {}

    def build(self) -> Circuit:
        layout = self.layout()
        bld = Builder(layout.num_wires)
        with bld.block("plain adder"):
            emit_adder(bld, *_wires(layout, "a", "b", "carry"))
        return bld.circuit(layout)


@dataclass(frozen=True)
class SubtractorSpec(AdderSpec):
    kind = "subtractor"

    def build(self) -> Circuit:
        return reverse(AdderSpec(self.n, self.full_carry).build())


@dataclass(frozen=True)
class ModAdderSpec:
    n: int
    N: int
    full_carry: bool = False
    swap_mode: str = "gates"
    kind = "modadder"

    def __post_init__(self):
        _check_common(self.n, self.swap_mode)
        _check_modulus(self.n, self.N)

    def layout(self) -> RegisterLayout:
        n = self.n
        return RegisterLayout.packed(
            [("a", "input_a", n), ("b", "input_b", n + 1),
             ("carry", "carry", _carry_width(n, self.full_carry)),
             ("modulus", "modulus_temp", n), ("t", "overflow_t", 1)]
        )

    def preload(self) -> dict[str, int]:
        return {"modulus": self.N}

    def build(self) -> Circuit:
        layout = self.layout()
        bld = Builder(layout.num_wires)
        a, b, carry, modulus, t = _wires(layout, "a", "b", "carry", "modulus", "t")
        with bld.block(f"modular adder mod {self.N}"):
            emit_modular_adder(bld, self.N, a, b, carry, modulus, t[0], self.swap_mode)
        return bld.circuit(layout)


@dataclass(frozen=True)
class CMultSpec:
    n: int
    a: int
    N: int
    full_carry: bool = False
    swap_mode: str = "gates"
    kind = "cmult"

    def __post_init__(self):
        _check_common(self.n, self.swap_mode)
        _check_modulus(self.n, self.N)
        if not 0 <= self.a < self.N:
            raise ValueError(f"multiplier a={self.a} must satisfy 0 <= a < N={self.N}")

    @property
    def constants(self) -> list[int]:
        return stage_constants(self.a, self.N, self.n)

    def layout(self) -> RegisterLayout:
        n = self.n
        return RegisterLayout.packed(
            [("c", "control", 1), ("x", "input_x", n), ("result", "result", n + 1),
             ("addend", "mult_temp", n), ("modulus", "modulus_temp", n),
             ("carry", "carry", _carry_width(n, self.full_carry)), ("t", "overflow_t", 1)]
        )

    def preload(self) -> dict[str, int]:
        return {"modulus": self.N}

    def build(self) -> Circuit:
        layout = self.layout()
        bld = Builder(layout.num_wires)
        c, x, res, add, mod, carry, t = _wires(
            layout, "c", "x", "result", "addend", "modulus", "carry", "t"
        )
        with bld.block(f"controlled multiply by {self.a} mod {self.N}"):
            emit_cmult(bld, self.a, self.N, c[0], x, res, add, carry, mod, t[0], self.swap_mode)
        return bld.circuit(layout)


@dataclass(frozen=True)
class ModExpSpec:
    n: int
    a: int
    N: int
    m: Optional[int] = None
    full_carry: bool = False
    swap_mode: str = "gates"
    kind = "modexp"
    multipliers: tuple[int, ...] = field(init=False, repr=False)
    inverses: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        _check_common(self.n, self.swap_mode)
        _check_modulus(self.n, self.N)
        if self.m is None:
            object.__setattr__(self, "m", 2 * self.n)
        if self.m < 1:
            raise ValueError(f"exponent width m must be >= 1, got {self.m}")
        if not 1 <= self.a < self.N:
            raise ValueError(f"base a={self.a} must satisfy 1 <= a < N={self.N}")
        if gcd(self.a, self.N) != 1:
            raise ValueError(
                f"base a={self.a} is not coprime to N={self.N} (gcd = {gcd(self.a, self.N)})"
            )
        mults = tuple(mod_pow(self.a, 1 << i, self.N) for i in range(self.m))
        object.__setattr__(self, "multipliers", mults)
        object.__setattr__(self, "inverses", tuple(mod_inverse(k, self.N) for k in mults))

    def layout(self) -> RegisterLayout:
        return modexp_layout(self.n, self.m, self.full_carry)

    def preload(self) -> dict[str, int]:
        return {}

    def build(self) -> Circuit:
        layout = self.layout()
        bld = Builder(layout.num_wires)
        x, acc, prod, add, mod, carry, t = _wires(
            layout, "x", "result", "product", "addend", "modulus", "carry", "t"
        )
        n, N = self.n, self.N
        n_bits = [j for j in range(n) if (N >> j) & 1]
        with bld.block("prepare: result <- 1, modulus <- N"):
            bld.add(NOT(acc[0]))
            bld.extend(NOT(mod[j]) for j in n_bits)
        live, spare = list(acc), list(prod[:n])
        for i in range(self.m):
            k, k_inv = self.multipliers[i], self.inverses[i]
            src_dst = (live, spare + [prod[n]])
            with bld.block(f"stage {i}: multiply by {k}"):
                emit_cmult(bld, k, N, x[i], src_dst[0], src_dst[1], add, carry, mod, t[0],
                           self.swap_mode)
            with bld.block(f"stage {i}: swap"):
                if self.swap_mode == "gates":
                    bld.extend(swap_gates(live, spare))
                else:
                    live, spare = spare, live
            with bld.block(f"stage {i}: unmultiply by {k_inv}", reverse=True):
                emit_cmult(bld, k_inv, N, x[i], live, spare + [prod[n]], add, carry, mod, t[0],
                           self.swap_mode)
        if live != list(acc):
            with bld.block("final swap"):
                bld.extend(swap_gates(live, acc))
        with bld.block("unprepare: modulus <- 0"):
            bld.extend(NOT(mod[j]) for j in n_bits)
        return bld.circuit(layout)


def modexp_layout(n: int, m: Optional[int] = None, full_carry: bool = False) -> RegisterLayout:
    m = 2 * n if m is None else m
    return RegisterLayout.packed(
        [("x", "input_x", m), ("result", "result", n), ("product", "exp_temp", n + 1),
         ("addend", "mult_temp", n), ("modulus", "modulus_temp", n),
         ("carry", "carry", _carry_width(n, full_carry)), ("t", "overflow_t", 1)]
    )


def _wires(layout: RegisterLayout, *names: str) -> list[list[int]]:
    return [list(layout[name].wires) if name in layout else [] for name in names]


# -- public builders -----------------------------------------------------------


def build_adder(n: int, full_carry: bool = False) -> Circuit:
    return AdderSpec(n, full_carry).build()


def build_subtractor(n: int, full_carry: bool = False) -> Circuit:
    return SubtractorSpec(n, full_carry).build()


def build_modular_adder(n: int, N: int, full_carry: bool = False, swap_mode: str = "gates") -> Circuit:
    return ModAdderSpec(n, N, full_carry, swap_mode).build()


def build_cmult(n: int, a: int, N: int, full_carry: bool = False, swap_mode: str = "gates") -> Circuit:
    return CMultSpec(n, a, N, full_carry, swap_mode).build()


def build_modexp(n: int, m: Optional[int], a: int, N: int, full_carry: bool = False,
                 swap_mode: str = "gates") -> Circuit:
    return ModExpSpec(n, a, N, m, full_carry, swap_mode).build()


SPECS = {
    "adder": AdderSpec,
    "subtractor": SubtractorSpec,
    "modadder": ModAdderSpec,
    "cmult": CMultSpec,
    "modexp": ModExpSpec,
}


def make_spec(kind: str, **params):
    """Build a spec from loose keyword parameters, dropping ones the kind ignores."""
    try:
        cls = SPECS[kind]
    except KeyError:
        raise ValueError(f"unknown network kind {kind!r}; choose from {sorted(SPECS)}") from None
    allowed = {
        "adder": ("n", "full_carry"),
        "subtractor": ("n", "full_carry"),
        "modadder": ("n", "N", "full_carry", "swap_mode"),
        "cmult": ("n", "a", "N", "full_carry", "swap_mode"),
        "modexp": ("n", "a", "N", "m", "full_carry", "swap_mode"),
    }[kind]
    return cls(**{k: v for k, v in params.items() if k in allowed and v is not None})
