"""Gate and qubit accounting, and log-log scaling fits of gate counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .circuit import Circuit, GateCounts, GateKind
from .synth import make_spec, modexp_layout

_FIELD = {
    GateKind.NOT: "not_count",
    GateKind.CNOT: "cnot_count",
    GateKind.TOFFOLI: "toffoli_count",
}


def count_gates(circuit: Circuit) -> GateCounts:
    tally = {"not_count": 0, "cnot_count": 0, "toffoli_count": 0}
    for g in circuit.gates:
        tally[_FIELD[g.kind]] += 1
    return GateCounts(**tally)


@dataclass(frozen=True)
class QubitBreakdown:
    by_register: dict[str, int]
    by_role: dict[str, int]
    total: int
    # modexp only: (x, result, temporaries) grouped the way the 7n+1 total is usually quoted
    grouped: Optional[dict[str, int]] = None

    def to_text(self) -> str:
        lines = [f"qubits.total: {self.total}"]
        lines += [f"qubits.register.{k}: {v}" for k, v in self.by_register.items()]
        lines += [f"qubits.role.{k}: {v}" for k, v in self.by_role.items()]
        if self.grouped:
            lines.append("qubits.grouping: reconstruction (x | result | temporaries incl. t and overflow bit)")
            lines += [f"qubits.grouped.{k}: {v}" for k, v in self.grouped.items()]
        return "\n".join(lines)


def qubit_count(spec) -> QubitBreakdown:
    """Breakdown of the spec's register layout. Accepts a spec or a layout."""
    layout = spec.layout() if hasattr(spec, "layout") else spec
    by_register = {r.name: r.width for r in layout}
    by_role: dict[str, int] = {}
    for r in layout:
        by_role[r.role] = by_role.get(r.role, 0) + r.width
    grouped = None
    if "x" in layout and "product" in layout:
        x = layout["x"].width
        res = layout["result"].width
        grouped = {"x": x, "result": res, "temporaries": layout.num_wires - x - res}
    return QubitBreakdown(by_register, by_role, layout.num_wires, grouped)


def modexp_qubits(n: int, m: Optional[int] = None) -> QubitBreakdown:
    """Layout-only accounting; valid even for n = 1 where no modulus fits."""
    return qubit_count(modexp_layout(n, m))


def theoretical_counts(n: int) -> dict[str, int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return {
        "baseline": 7 * n + 1,
        "classical_register_variant": 5 * n + 2,
        "toffoli_adder_variant": 4 * n + 3,
    }


def default_params(kind: str, n: int) -> dict:
    """Representative instance for counting sweeps: N = 2^n - 1, a = 2."""
    if kind in ("adder", "subtractor"):
        return {"n": n}
    if n < 2:
        raise ValueError(f"{kind} needs n >= 2 for a modulus 2 <= N < 2^n")
    N = (1 << n) - 1
    return {"n": n, "N": N, "a": 2}


@dataclass
class ScalingResult:
    kind: str
    points: list[tuple[int, GateCounts]]
    slope: float
    swap_mode: str = "gates"

    def csv(self) -> str:
        rows = ["n,not,cnot,toffoli,total"]
        for n, c in self.points:
            rows.append(f"{n},{c.not_count},{c.cnot_count},{c.toffoli_count},{c.total}")
        return "\n".join(rows) + "\n"


def loglog_slope(ns: Iterable[int], totals: Iterable[int]) -> float:
    ns, totals = list(ns), list(totals)
    if len(set(ns)) < 4:
        raise ValueError("a scaling fit needs at least 4 distinct n values")
    slope, _ = np.polyfit(np.log(ns), np.log(totals), 1)
    return float(slope)


def scaling_fit(kind: str, n_range: Iterable[int], swap_mode: str = "gates",
                **overrides) -> ScalingResult:
    """Build the network at each n and fit log(total gates) against log(n)."""
    ns = sorted(set(n_range))
    if len(ns) < 4:
        raise ValueError("a scaling fit needs at least 4 distinct n values")
    points = []
    for n in ns:
        params = {**default_params(kind, n), "swap_mode": swap_mode, **overrides}
        points.append((n, count_gates(make_spec(kind, **params).build())))
    slope = loglog_slope(ns, [c.total for _, c in points])
    return ScalingResult(kind, points, slope, swap_mode)


@dataclass
class ResourceReport:
    kind: str
    params: dict
    counts: Optional[GateCounts]
    qubits: QubitBreakdown
    theoretical: Optional[dict[str, int]] = None
    scaling: Optional[ScalingResult] = None
    notes: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"kind: {self.kind}",
                 "params: " + " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))]
        if self.counts is not None:
            c = self.counts
            lines += [f"gates.not: {c.not_count}", f"gates.cnot: {c.cnot_count}",
                      f"gates.toffoli: {c.toffoli_count}", f"gates.total: {c.total}"]
        lines.append(self.qubits.to_text())
        if self.theoretical:
            lines += [f"theoretical.{k}: {v}" for k, v in self.theoretical.items()]
        if self.scaling is not None:
            lines.append(f"scaling.swap_mode: {self.scaling.swap_mode}")
            lines.append(f"scaling.n: {' '.join(str(n) for n, _ in self.scaling.points)}")
            lines.append(f"scaling.loglog_slope: {self.scaling.slope:.4f}")
        lines += [f"note: {s}" for s in self.notes]
        return "\n".join(lines) + "\n"
