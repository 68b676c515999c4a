"""QCIRC v1 text format.

::

    QCIRC v1 <num_wires>
    REG <name> <role> <first_wire> <width>
    NOT <t>
    CNOT <c> <t>
    TOFF <c1> <c2> <t>

``#`` starts a comment.  Provenance spans are stored in comments of the form
``#@span <start> <end> <label>`` so that readers ignoring comments still see a
valid circuit, while :func:`parse` restores them.
"""
from __future__ import annotations

from .circuit import Circuit, CircuitError, Gate, GateKind, Register, RegisterLayout, Span

HEADER = "QCIRC v1"

_KINDS = {k.value: k for k in GateKind}


class ParseError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


def serialize(circuit: Circuit) -> str:
    lines = [f"{HEADER} {circuit.num_wires}"]
    for r in circuit.layout:
        lines.append(f"REG {r.name} {r.role} {r.start} {r.width}")
    for s in circuit.spans:
        lines.append(f"#@span {s.start} {s.end} {s.label}")
    lines.extend(str(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def _int_field(tok: str, lineno: int, what: str) -> int:
    if not tok.isdigit():
        raise ParseError(lineno, f"{what} must be a non-negative decimal integer, got {tok!r}")
    return int(tok)


def parse(text: str) -> Circuit:
    num_wires = None
    regs: list[Register] = []
    spans: list[Span] = []
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#@span "):
            parts = raw.split(" ", 3)
            if len(parts) != 4:
                raise ParseError(lineno, "span needs start, end and label")
            spans.append(
                Span(
                    _int_field(parts[1], lineno, "span start"),
                    _int_field(parts[2], lineno, "span end"),
                    parts[3],
                )
            )
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split(" ")
        if num_wires is None:
            if len(toks) != 3 or " ".join(toks[:2]) != HEADER:
                raise ParseError(lineno, f"expected header '{HEADER} <num_wires>'")
            num_wires = _int_field(toks[2], lineno, "wire count")
            continue
        head = toks[0]
        if head == "REG":
            if len(toks) != 5:
                raise ParseError(lineno, "REG needs name, role, first wire and width")
            try:
                regs.append(
                    Register(
                        toks[1],
                        toks[2],
                        _int_field(toks[3], lineno, "first wire"),
                        _int_field(toks[4], lineno, "width"),
                    )
                )
            except CircuitError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif head in _KINDS:
            kind = _KINDS[head]
            if len(toks) - 1 != kind.arity:
                raise ParseError(
                    lineno, f"arity: {head} takes {kind.arity} wire(s), got {len(toks) - 1}"
                )
            wires = tuple(_int_field(t, lineno, "wire index") for t in toks[1:])
            if max(wires) >= num_wires:
                raise ParseError(lineno, f"wire index {max(wires)} out of range")
            try:
                gates.append(Gate(kind, wires))
            except CircuitError as exc:
                raise ParseError(lineno, str(exc)) from None
        else:
            raise ParseError(lineno, f"unknown item {head!r}")
    if num_wires is None:
        raise ParseError(0, "empty input, missing header")
    try:
        return Circuit(num_wires, tuple(gates), RegisterLayout(tuple(regs)), tuple(spans))
    except CircuitError as exc:
        raise ParseError(0, str(exc)) from None
