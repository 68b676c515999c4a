"""Reversible arithmetic networks built from NOT, CNOT and Toffoli gates."""
from .circuit import (
    CNOT,
    NOT,
    TOFFOLI,
    Circuit,
    CircuitError,
    Gate,
    GateCounts,
    GateKind,
    Register,
    RegisterLayout,
    append_gate,
    concat,
    emit_swap,
    reverse,
)
from .numtheory import mod_inverse, mod_pow
from .qcirc import ParseError, parse, serialize
from .sim import BasisState, SparseState, decode, encode, run_basis, run_batch, run_sparse
from .synth import (
    AdderSpec,
    CMultSpec,
    ModAdderSpec,
    ModExpSpec,
    build_adder,
    build_carry,
    build_cmult,
    build_modexp,
    build_modular_adder,
    build_subtractor,
    build_sum,
)

__version__ = "0.1.0"
