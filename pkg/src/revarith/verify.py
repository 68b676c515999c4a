"""Exhaustive and seeded-random verification of the networks against the oracles.

Every case checks the whole register file after the run: the result register
against the oracle, the inputs that must be preserved, and every ancilla
(carries, modulus register, addend, product register, t) against its required
final value.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import kernel
from .circuit import Circuit, concat, reverse
from .oracle import oracle_add, oracle_cmult, oracle_modadd, oracle_modexp, oracle_sub
from .sim import BasisState, decode, format_registers, run_batch, trace
from .synth import make_spec

DEFAULT_BUDGET = 1 << 24
ANCILLA_ROLES = frozenset({"carry", "modulus_temp", "mult_temp", "exp_temp", "overflow_t"})
KINDS = ("adder", "subtractor", "modadder", "cmult", "modexp")
_CHUNK = 1 << 15


class BudgetExceeded(ValueError):
    pass


@dataclass
class VerificationReport:
    kind: str
    params: dict
    mode: str
    cases: int = 0
    failures: int = 0
    ancilla_violations: int = 0
    counterexample: Optional[dict] = None
    seed: Optional[int] = None
    backend: str = field(default_factory=lambda: kernel.BACKEND, compare=False)
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_text(self) -> str:
        """``key: value`` lines."""
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        lines = [
            f"kind: {self.kind}",
            f"params: {params}",
            f"mode: {self.mode}",
        ]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        lines += [
            f"cases: {self.cases}",
            f"failures: {self.failures}",
            f"ancilla_violations: {self.ancilla_violations}",
            f"status: {'PASS' if self.ok else 'FAIL'}",
            f"backend: {self.backend}",
            f"wall_time_s: {self.wall_time:.3f}",
        ]
        cx = self.counterexample
        if cx is not None:
            lines.append(f"counterexample.spec: {cx['spec']}")
            for key in ("input", "expected", "actual"):
                regs = " ".join(f"{k}={v}" for k, v in cx[key].items())
                lines.append(f"counterexample.{key}: {regs}")
            for step in cx.get("trace", []):
                lines.append(f"counterexample.trace: {step}")
        return "\n".join(lines) + "\n"

    def table(self) -> str:
        rows = [
            ("network", self.kind),
            ("parameters", " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))),
            ("mode", self.mode + (f" (seed {self.seed})" if self.seed is not None else "")),
            ("cases run", str(self.cases)),
            ("failures", str(self.failures)),
            ("ancilla violations", str(self.ancilla_violations)),
            ("wall time", f"{self.wall_time:.3f} s ({self.backend} kernel)"),
            ("verdict", "PASS" if self.ok else "FAIL"),
        ]
        width = max(len(k) for k, _ in rows)
        out = [f"{k:<{width}}  {v}" for k, v in rows]
        cx = self.counterexample
        if cx is not None:
            out.append(f"first counterexample ({cx['spec']}):")
            for key in ("input", "expected", "actual"):
                out.append(f"  {key:<8} " + " ".join(f"{k}={v}" for k, v in cx[key].items()))
            for step in cx.get("trace", []):
                out.append(f"  | {step}")
        return "\n".join(out) + "\n"


# -- instances and expected register files --------------------------------------


def _specs(kind: str, params: dict) -> list:
    """Expand loose parameters to concrete specs; a missing N or a is swept."""
    p = {k: v for k, v in params.items() if v is not None}
    if kind not in KINDS:
        raise ValueError(f"unknown network kind {kind!r}; choose from {KINDS}")
    if kind == "modexp":
        if "N" not in p:
            raise ValueError("modexp verification needs N")
        p.setdefault("n", p["N"].bit_length())
    if "n" not in p:
        raise ValueError(f"{kind} verification needs n")
    n = p["n"]
    if kind in ("adder", "subtractor"):
        return [make_spec(kind, **p)]
    moduli = [p["N"]] if "N" in p else list(range(2, 1 << n))
    specs = []
    for N in moduli:
        if kind == "modadder":
            specs.append(make_spec(kind, **{**p, "N": N}))
        elif kind == "cmult":
            bases = [p["a"]] if "a" in p else range(N)
            specs += [make_spec(kind, **{**p, "N": N, "a": a}) for a in bases]
        else:
            bases = [p["a"]] if "a" in p else [a for a in range(1, N) if math.gcd(a, N) == 1]
            specs += [make_spec(kind, **{**p, "N": N, "a": a}) for a in bases]
    return specs


def _case_count(spec) -> int:
    if spec.kind in ("adder", "subtractor"):
        return 4**spec.n
    if spec.kind == "modadder":
        return spec.N**2
    if spec.kind == "cmult":
        return 2 << spec.n
    return 1 << spec.m


def _all_inputs(spec) -> Iterator[dict]:
    n = spec.n
    if spec.kind in ("adder", "subtractor"):
        for a, b in itertools.product(range(1 << n), repeat=2):
            yield {"a": a, "b": b}
    elif spec.kind == "modadder":
        for a, b in itertools.product(range(spec.N), repeat=2):
            yield {"a": a, "b": b}
    elif spec.kind == "cmult":
        for c, x in itertools.product((0, 1), range(1 << n)):
            yield {"c": c, "x": x}
    else:
        for x in range(1 << spec.m):
            yield {"x": x}


def _random_input(spec, rng: random.Random) -> dict:
    n = spec.n
    if spec.kind in ("adder", "subtractor"):
        return {"a": rng.randrange(1 << n), "b": rng.randrange(1 << n)}
    if spec.kind == "modadder":
        return {"a": rng.randrange(spec.N), "b": rng.randrange(spec.N)}
    if spec.kind == "cmult":
        return {"c": rng.randrange(2), "x": rng.randrange(1 << n)}
    return {"x": rng.randrange(1 << spec.m)}


def expected_registers(spec, circuit: Circuit, inputs: dict) -> dict[str, int]:
    """Required final value of every register, from the oracles alone."""
    out = {r.name: 0 for r in circuit.layout}
    out.update(inputs)
    out.update(spec.preload())
    n = spec.n
    if spec.kind == "adder":
        out["b"] = oracle_add(inputs["a"], inputs["b"])
    elif spec.kind == "subtractor":
        out["b"] = oracle_sub(inputs["a"], inputs["b"], n + 1)
    elif spec.kind == "modadder":
        out["b"] = oracle_modadd(inputs["a"], inputs["b"], spec.N)
    elif spec.kind == "cmult":
        out["result"] = oracle_cmult(inputs["c"], inputs["x"], spec.a, spec.N)
    else:
        out["result"] = oracle_modexp(spec.a, inputs["x"], spec.N)
    return out


def _initial_registers(spec, inputs: dict) -> dict:
    return {**inputs, **spec.preload()}


# -- harness ---------------------------------------------------------------------


def _check(spec, circuit: Circuit, cases: list[dict], report: VerificationReport) -> None:
    layout = circuit.layout
    ancillae = [r.name for r in layout if r.role in ANCILLA_ROLES]
    for lo in range(0, len(cases), _CHUNK):
        chunk = cases[lo:lo + _CHUNK]
        states = []
        for inp in chunk:
            value = 0
            for name, v in _initial_registers(spec, inp).items():
                value |= v << layout[name].start
            states.append(value)
        outputs = run_batch(circuit, states)
        for inp, state_in, state_out in zip(chunk, states, outputs):
            report.cases += 1
            actual = decode(layout, state_out)
            expected = expected_registers(spec, circuit, inp)
            bad = actual != expected
            if spec.kind == "subtractor":
                # comparator use: overflow bit is [y < x]
                bad |= (actual["b"] >> spec.n) != int(inp["b"] < inp["a"])
            if not bad:
                continue
            report.failures += 1
            if any(actual[r] != expected[r] for r in ancillae):
                report.ancilla_violations += 1
            if report.counterexample is None:
                report.counterexample = _counterexample(spec, circuit, inp, expected, actual, state_in)


def _counterexample(spec, circuit, inp, expected, actual, state_in) -> dict:
    cx = {"spec": repr(spec), "input": dict(inp), "expected": expected, "actual": actual}
    if spec.kind == "modadder":
        steps = trace(circuit, BasisState(circuit.num_wires, state_in), max_depth=1)
        cx["trace"] = [
            f"{label} @gate {idx}: {format_registers(circuit.layout, value)}"
            for idx, label, value in steps
        ]
    return cx


def _public_params(params: dict) -> dict:
    return {k: v for k, v in params.items() if v is not None}


def verify_exhaustive(kind: str, params: dict, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Check every legal input; refuse if more than ``budget`` cases would run."""
    t0 = time.perf_counter()
    specs = _specs(kind, params)
    total = sum(_case_count(s) for s in specs)
    if total > budget:
        raise BudgetExceeded(
            f"{kind} with {_public_params(params)} needs {total} cases, over the "
            f"enumeration budget of {budget}; use random sampling instead"
        )
    report = VerificationReport(kind, _public_params(params), "exhaustive")
    for spec in specs:
        _check(spec, spec.build(), list(_all_inputs(spec)), report)
    report.wall_time = time.perf_counter() - t0
    return report


def verify_random(kind: str, params: dict, samples: int, seed: int) -> VerificationReport:
    """Seeded sampling of inputs; one concrete instance (N and a must be given)."""
    t0 = time.perf_counter()
    specs = _specs(kind, params)
    if len(specs) != 1:
        raise ValueError(f"random verification of {kind} needs explicit N and a")
    spec = specs[0]
    rng = random.Random(seed)
    cases = [_random_input(spec, rng) for _ in range(samples)]
    report = VerificationReport(kind, _public_params(params), "random", seed=seed)
    _check(spec, spec.build(), cases, report)
    report.wall_time = time.perf_counter() - t0
    return report


def check_permutation(circuit: Circuit, max_wires: int = 24) -> bool:
    """True iff the circuit maps the 2^w basis states one-to-one."""
    w = circuit.num_wires
    if w > max_wires:
        raise BudgetExceeded(f"{w} wires exceeds the enumeration guard of {max_wires}")
    seen = np.zeros(1 << w, dtype=bool)
    for lo in range(0, 1 << w, 1 << 16):
        outs = np.array(run_batch(circuit, range(lo, min(lo + (1 << 16), 1 << w))), dtype=np.int64)
        if seen[outs].any() or len(np.unique(outs)) != len(outs):
            return False
        seen[outs] = True
    return bool(seen.all())


def check_reversal(circuit: Circuit, max_wires: int = 24) -> bool:
    """True iff the circuit followed by its reverse is the identity on every basis state."""
    w = circuit.num_wires
    if w > max_wires:
        raise BudgetExceeded(f"{w} wires exceeds the enumeration guard of {max_wires}")
    roundtrip = concat(circuit, reverse(circuit))
    for lo in range(0, 1 << w, 1 << 16):
        states = range(lo, min(lo + (1 << 16), 1 << w))
        if run_batch(roundtrip, states) != list(states):
            return False
    return True
