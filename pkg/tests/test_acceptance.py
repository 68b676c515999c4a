"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary."""
import math
import random
import time

from revarith.circuit import RegisterLayout
from revarith.qcirc import parse, serialize
from revarith.resources import qubit_count, scaling_fit, theoretical_counts
from revarith.sim import SparseState, decode, encode, run_sparse
from revarith.synth import (
    AdderSpec,
    CMultSpec,
    ModAdderSpec,
    ModExpSpec,
    SubtractorSpec,
    build_carry,
    build_sum,
)
from revarith.verify import check_permutation, check_reversal, verify_exhaustive

from conftest import random_circuit


def _total(reports):
    return sum(r.cases for r in reports), sum(r.failures for r in reports), sum(
        r.ancilla_violations for r in reports)


def test_01_plain_adder_exhaustive(acceptance):
    t0 = time.perf_counter()
    reports = [verify_exhaustive("adder", {"n": n}) for n in range(1, 6)]
    elapsed = time.perf_counter() - t0
    cases, failures, dirty = _total(reports)
    expected_cases = sum(4**n for n in range(1, 6))
    ok = cases == expected_cases and failures == 0 and dirty == 0 and elapsed < 10
    assert acceptance(1, "plain adder exhaustive n=1..5", ok,
                      f"{cases} cases, {failures} failures, {elapsed:.2f}s (< 10s)")


def test_02_subtractor_comparator(acceptance):
    reports = [verify_exhaustive("subtractor", {"n": n}) for n in range(1, 6)]
    cases, failures, dirty = _total(reports)
    ok = cases == sum(4**n for n in range(1, 6)) and failures == 0 and dirty == 0
    assert acceptance(2, "subtractor (y-x) mod 2^(n+1) and overflow bit = [y<x]", ok,
                      f"{cases} cases, {failures} failures")


def test_03_modular_adder_exhaustive(acceptance):
    t0 = time.perf_counter()
    report = verify_exhaustive("modadder", {"n": 4})
    elapsed = time.perf_counter() - t0
    expected_cases = sum(N * N for N in range(2, 16))
    ok = (report.cases == expected_cases and report.failures == 0
          and report.ancilla_violations == 0 and elapsed < 60)
    assert acceptance(3, "modular adder n=4, all N in 2..15, all a,b < N", ok,
                      f"{report.cases} cases, {report.failures} failures, "
                      f"{report.ancilla_violations} dirty ancillae, {elapsed:.2f}s (< 60s)")


def test_04_controlled_multiplier(acceptance):
    reports = [verify_exhaustive("cmult", {"n": n}) for n in (3, 4)]
    cases, failures, dirty = _total(reports)
    expected_cases = sum(N * (2 << n) for n in (3, 4) for N in range(2, 1 << n))
    ok = cases == expected_cases and failures == 0 and dirty == 0
    assert acceptance(4, "controlled multiplier n=3,4, c in {0,1}, all N, a < N, all x", ok,
                      f"{cases} cases, {failures} failures, {dirty} dirty ancillae")


def test_05_modexp_exhaustive(acceptance):
    t0 = time.perf_counter()
    reports = [verify_exhaustive("modexp", {"N": 15, "m": 8})]
    reports += [verify_exhaustive("modexp", {"N": 21, "a": a, "m": 8}) for a in (2, 5)]
    elapsed = time.perf_counter() - t0
    cases, failures, dirty = _total(reports)
    coprime_15 = [a for a in range(1, 15) if math.gcd(a, 15) == 1]
    ok = (cases == 256 * (len(coprime_15) + 2) and failures == 0 and dirty == 0
          and elapsed < 300)
    # the temporaries checked are exactly 4n+1 wires
    temps = qubit_count(ModExpSpec(4, 7, 15, m=8)).grouped["temporaries"]
    ok &= temps == 4 * 4 + 1
    assert acceptance(5, "modexp N=15 (all coprime a), N=21 (a=2,5), m=8, all 256 x", ok,
                      f"{cases} cases, {failures} failures, {dirty} dirty ancillae, "
                      f"{temps} temporaries, {elapsed:.2f}s (< 300s)")


def test_06_qubit_count(acceptance):
    widths = {}
    for n in range(2, 13):
        spec = ModExpSpec(n, 2, (1 << n) - 1)
        assert spec.m == 2 * n
        widths[n] = spec.build().num_wires
    ok = all(w == 7 * n + 1 for n, w in widths.items())
    ok &= all(tuple(theoretical_counts(n).values()) == (7 * n + 1, 5 * n + 2, 4 * n + 3)
              for n in range(1, 13))
    ok &= theoretical_counts(4)["toffoli_adder_variant"] == 19
    assert acceptance(6, "modexp width = 7n+1 for n=2..12; formulas (7n+1, 5n+2, 4n+3); n=4 -> 19",
                      ok, f"widths {sorted(widths.values())}")


def test_07_scaling(acceptance):
    t0 = time.perf_counter()
    adder = scaling_fit("adder", range(4, 33)).slope
    cmult = scaling_fit("cmult", range(4, 17)).slope
    modexp = scaling_fit("modexp", range(4, 13)).slope
    elapsed = time.perf_counter() - t0
    ok = 0.8 <= adder <= 1.2 and 1.7 <= cmult <= 2.3 and 2.7 <= modexp <= 3.3 and elapsed < 120
    assert acceptance(7, "log-log gate scaling: adder ~1, cmult ~2, modexp ~3", ok,
                      f"slopes {adder:.3f} / {cmult:.3f} / {modexp:.3f}, {elapsed:.1f}s (< 120s)")


def _small_builder_outputs():
    out = [build_carry(0, 1, 2, 3), build_carry(None, 0, 1, 2), build_sum(0, 1, 2)]
    for full in (False, True):
        for n in range(1, 5):
            for cls in (AdderSpec, SubtractorSpec):
                out.append(cls(n, full).build())
        for mode in ("gates", "relabel"):
            for N in (2, 3):
                out.append(ModAdderSpec(2, N, full, mode).build())
                out += [CMultSpec(2, a, N, full, mode).build() for a in range(N)]
                out += [ModExpSpec(2, a, N, m, full, mode).build()
                        for a in range(1, N) for m in (1, 2)]
    return [c for c in out if c.num_wires <= 12]


def test_08_reversibility(acceptance):
    circuits = _small_builder_outputs()
    bad = [c for c in circuits if not (check_reversal(c) and check_permutation(c))]
    kinds = {c.spans[0].label.split(" mod")[0] if c.spans else "fragment" for c in circuits}
    ok = not bad and len(circuits) >= 40
    assert acceptance(8, "every builder output <= 12 wires: C;reverse(C) = id and a permutation",
                      ok, f"{len(circuits)} circuits ({len(kinds)} kinds), {len(bad)} failures")


def test_09_superposition(acceptance):
    spec = ModExpSpec(4, 7, 15)
    c = spec.build()
    layout: RegisterLayout = c.layout
    psi = SparseState.uniform(c.num_wires, [encode(layout, {"x": x}).value for x in (1, 3)])
    out = run_sparse(c, psi)
    amp = 1 / math.sqrt(2)
    expected = {encode(layout, {"x": 1, "result": 7}).value: amp,
                encode(layout, {"x": 3, "result": 13}).value: amp}
    ancillae_zero = all(
        all(v == 0 for k, v in decode(layout, s).items() if k not in ("x", "result"))
        for s in out.terms)
    norm_err = abs(out.norm() - 1)
    ok = out.terms == expected and ancillae_zero and norm_err < 1e-12
    assert acceptance(9, "modexp on (|1>+|3>)/sqrt2 -> (|1,7>+|3,13>)/sqrt2", ok,
                      f"norm error {norm_err:.1e} (< 1e-12)")


def _builder_outputs_up_to_6():
    for n in range(1, 7):
        for full in (False, True):
            yield AdderSpec(n, full).build()
            yield SubtractorSpec(n, full).build()
        for N in range(2, 1 << n):
            for mode in ("gates", "relabel"):
                yield ModAdderSpec(n, N, swap_mode=mode).build()
            for a in sorted({0, 1, N // 2, N - 1}):
                yield CMultSpec(n, a, N).build()
        if n >= 2:
            for N in sorted({(1 << n) - 1, (1 << (n - 1)) + 1}):
                bases = [a for a in range(1, N) if math.gcd(a, N) == 1]
                for a in sorted({bases[0], bases[-1]}):
                    for mode in ("gates", "relabel"):
                        yield ModExpSpec(n, a, N, swap_mode=mode).build()


def test_10_serialization_round_trip(acceptance):
    failures = builders = 0
    for c in _builder_outputs_up_to_6():
        builders += 1
        failures += parse(serialize(c)) != c
    rng = random.Random(20240601)
    for _ in range(1000):
        c = random_circuit(rng, rng.randint(3, 40), rng.randint(0, 80))
        failures += parse(serialize(c)) != c
    ok = failures == 0
    assert acceptance(10, "parse(serialize(C)) = C for builder outputs n<=6 and 1000 random", ok,
                      f"{builders} builder circuits + 1000 random, {failures} failures")
