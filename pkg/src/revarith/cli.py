"""Command-line front end: ``revarith build | simulate | verify | resources``.

Exit codes: 0 success, 1 verification counterexample, 2 usage or parameter
error, 3 I/O or parse error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import kernel
from .qcirc import ParseError, parse, serialize
from .resources import (
    ResourceReport,
    count_gates,
    default_params,
    modexp_qubits,
    qubit_count,
    scaling_fit,
    theoretical_counts,
)
from .sim import (
    BasisState,
    SimulationError,
    SparseState,
    encode,
    format_registers,
    run_basis,
    run_sparse,
    trace,
)
from .synth import SPECS, make_spec
from .verify import BudgetExceeded, verify_exhaustive, verify_random

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Decimal, or binary/hex with a 0b/0x prefix."""
    t = text.strip().lower()
    try:
        if t.startswith(("0b", "0x")):
            return int(t, 0)
        return int(t, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def parse_assignments(text: str) -> dict[str, int]:
    """``"x=3,result=0b1"`` -> ``{"x": 3, "result": 1}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected REG=VALUE, got {item!r}")
        try:
            out[name.strip()] = parse_int(value)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from None
    return out


def parse_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"sweep must look like LO..HI, got {text!r}")
    return list(range(int(lo), int(hi) + 1))


def _params(args) -> dict:
    p = {"n": args.n, "m": args.m, "a": args.a, "N": args.N,
         "swap_mode": args.swap_mode, "full_carry": args.full_carry}
    if args.kind == "modexp" and p["n"] is None and p["N"] is not None:
        p["n"] = p["N"].bit_length()
    return p


def _spec(args):
    p = _params(args)
    if p["n"] is None:
        raise UsageError(f"{args.kind} needs --n")
    missing = [k for k in {"modadder": ("N",), "cmult": ("a", "N"), "modexp": ("a", "N")}
               .get(args.kind, ()) if p[k] is None]
    if missing:
        raise UsageError(f"{args.kind} needs " + ", ".join(f"--{k}" for k in missing))
    return make_spec(args.kind, **p)


def layout_table(circuit) -> str:
    rows = [("register", "role", "wires", "width")]
    for r in circuit.layout:
        rows.append((r.name, r.role, f"{r.start}..{r.start + r.width - 1}", str(r.width)))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows)


def counts_line(circuit) -> str:
    c = count_gates(circuit)
    return (f"wires={circuit.num_wires} gates={c.total} "
            f"(NOT={c.not_count} CNOT={c.cnot_count} TOFF={c.toffoli_count})")


# -- subcommands ------------------------------------------------------------------


def cmd_build(args) -> int:
    circuit = _spec(args).build()
    text = serialize(circuit)
    if args.out:
        Path(args.out).write_text(text)
        info = sys.stdout
    else:
        sys.stdout.write(text)
        info = sys.stderr
    print(layout_table(circuit), file=info)
    print(counts_line(circuit), file=info)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.circuit:
        circuit = parse(Path(args.circuit).read_text())
        preload = {}
    elif args.kind:
        spec = _spec(args)
        circuit = spec.build()
        preload = spec.preload()
    else:
        raise UsageError("simulate needs a network kind or --circuit FILE")
    layout = circuit.layout
    base = {**preload}
    for item in args.set or []:
        base.update(parse_assignments(item))

    def load(values):
        if not layout.registers:
            if set(values) - {"state"}:
                raise UsageError("circuit has no registers; use --set state=VALUE")
            return BasisState(circuit.num_wires, values.get("state", 0))
        return encode(layout, values)

    def show(state):
        if not layout.registers:
            return f"state={state.value} ({state})"
        return format_registers(layout, state)

    if args.term:
        terms = [{**base, **parse_assignments(t)} for t in args.term]
        if args.amplitudes:
            amps = [complex(a) for a in args.amplitudes.split(",")]
            if len(amps) != len(terms):
                raise UsageError("--amplitudes needs one value per --term")
        else:
            amps = [1 / math.sqrt(len(terms))] * len(terms)
        states = [load(t).value for t in terms]
        if len(set(states)) != len(states):
            raise UsageError("duplicate basis terms")
        psi = SparseState(circuit.num_wires, dict(zip(states, amps)))
        out = run_sparse(circuit, psi)
        print("before:")
        for value, amp in psi.terms.items():
            print(f"  {amp:.6g}  {show(BasisState(circuit.num_wires, value))}")
        print("after:")
        for value, amp in out.terms.items():
            print(f"  {amp:.6g}  {show(BasisState(circuit.num_wires, value))}")
        print(f"norm: {out.norm():.15f}")
        return EXIT_OK

    state = load(base)
    print(f"before: {show(state)}")
    if args.trace:
        for idx, label, value in trace(circuit, state, args.trace_depth):
            print(f"  [{idx:>7}] {label}: {show(BasisState(circuit.num_wires, value))}")
    print(f"after:  {show(run_basis(circuit, state))}")
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params(args)
    if args.random:
        report = verify_random(args.kind, params, args.samples, args.seed)
    else:
        report = verify_exhaustive(args.kind, params, args.budget)
    sys.stdout.write(report.to_text() if args.format == "kv" else report.table())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_resources(args) -> int:
    p = _params(args)
    if p["n"] is None:
        raise UsageError(f"{args.kind} needs --n")
    n = p["n"]
    notes = []
    counts = None
    theoretical = theoretical_counts(n) if args.kind == "modexp" else None
    try:
        filled = {**default_params(args.kind, n), **{k: v for k, v in p.items() if v is not None}}
        spec = make_spec(args.kind, **filled)
    except ValueError as exc:
        if args.kind != "modexp":
            raise
        notes.append(f"no circuit constructed: {exc}")
        qubits = modexp_qubits(n, p["m"])
        filled = {k: v for k, v in p.items() if v is not None}
    else:
        counts = count_gates(spec.build())
        qubits = qubit_count(spec)
    scaling = None
    if args.sweep:
        scaling = scaling_fit(args.kind, parse_range(args.sweep), swap_mode=args.swap_mode,
                              full_carry=args.full_carry)
        if args.csv:
            Path(args.csv).write_text(scaling.csv())
        else:
            notes.append("sweep csv follows")
    report = ResourceReport(args.kind, filled, counts, qubits, theoretical, scaling, notes)
    sys.stdout.write(report.to_text())
    if scaling is not None and not args.csv:
        sys.stdout.write(scaling.csv())
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------------


def _add_network_args(p: argparse.ArgumentParser, kind_required: bool = True) -> None:
    kinds = sorted(SPECS)
    if kind_required:
        p.add_argument("kind", choices=kinds)
    else:
        p.add_argument("kind", nargs="?", choices=kinds)
    p.add_argument("--n", type=parse_int, help="operand / modulus bit width")
    p.add_argument("--m", type=parse_int, help="exponent bit width (modexp, default 2n)")
    p.add_argument("--a", type=parse_int, help="classical multiplier or base")
    p.add_argument("--N", dest="N", type=parse_int, help="modulus")
    p.add_argument("--swap-mode", choices=("gates", "relabel"), default="gates",
                   help="materialize register swaps as CNOTs or relabel wires")
    p.add_argument("--full-carry", action="store_true",
                   help="use an n-wire carry register instead of n-1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revarith", allow_abbrev=False,
        description="Reversible arithmetic networks: build, simulate, verify, count.")
    parser.add_argument("--kernel", choices=sorted(kernel.BACKENDS),
                        help="simulation kernel (default: compiled if available)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", allow_abbrev=False, help="write a circuit in QCIRC v1 format")
    _add_network_args(p)
    p.add_argument("-o", "--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("simulate", allow_abbrev=False, help="run a circuit on basis states")
    _add_network_args(p, kind_required=False)
    p.add_argument("--circuit", help="QCIRC v1 file instead of an inline build")
    p.add_argument("--set", action="append", metavar="REG=VAL[,REG=VAL]",
                   help="initial register values")
    p.add_argument("--term", action="append", metavar="REG=VAL[,REG=VAL]",
                   help="one basis term of a superposition (repeatable)")
    p.add_argument("--amplitudes", help="comma-separated complex amplitudes, one per --term")
    p.add_argument("--trace", action="store_true", help="print registers at block boundaries")
    p.add_argument("--trace-depth", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", allow_abbrev=False, help="compare a network against the oracles")
    _add_network_args(p)
    p.add_argument("--random", action="store_true", help="seeded sampling instead of enumeration")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1 << 24, help="enumeration guard")
    p.add_argument("--format", choices=("table", "kv"), default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resources", allow_abbrev=False, help="gate and qubit accounting")
    _add_network_args(p)
    p.add_argument("--sweep", metavar="LO..HI", help="fit log-log gate scaling over n")
    p.add_argument("--csv", help="write the sweep as CSV to this path")
    p.set_defaults(func=cmd_resources)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = kernel.apply_gates, kernel.BACKEND
    if args.kernel:
        kernel.apply_gates, kernel.BACKEND = kernel.get_backend(args.kernel), args.kernel
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, BudgetExceeded, SimulationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        kernel.apply_gates, kernel.BACKEND = saved


if __name__ == "__main__":
    sys.exit(main())
