"""Compiled vs pure-Python bit-sliced kernel on verification-sized workloads.

    python benchmarks/bench_kernel.py [--repeat 3]
"""
import argparse
import random
import time

from revarith import kernel
from revarith.sim import _from_lanes, _to_lanes
from revarith.synth import AdderSpec, CMultSpec, ModExpSpec
from revarith.sim import encode


def workloads():
    rng = random.Random(0)
    spec = ModExpSpec(4, 7, 15, m=8)
    c = spec.build()
    yield "modexp N=15 m=8, all 256 x", c, [encode(c.layout, {"x": x}).value for x in range(256)]

    c = ModExpSpec(6, 5, 33).build()
    yield "modexp N=33 m=12, 2000 random x", c, [
        encode(c.layout, {"x": rng.randrange(1 << 12)}).value for _ in range(2000)]

    c = CMultSpec(8, 77, 201).build()
    yield "cmult n=8, 20000 random (c, x)", c, [
        encode(c.layout, {"c": rng.randrange(2), "x": rng.randrange(256), "modulus": 201}).value
        for _ in range(20000)]

    c = AdderSpec(10).build()
    yield "adder n=10, all 2^20 (a, b)", c, [a | b << 10 for a in range(1024) for b in range(1024)]

    c = ModExpSpec(12, 5, 4093).build()
    yield "modexp n=12 m=24 (85 wires), 64 random x", c, [
        encode(c.layout, {"x": rng.randrange(1 << 24)}).value for _ in range(64)]


def bench(apply, circuit, lanes, repeat):
    masks = circuit.masks()
    best = float("inf")
    for _ in range(repeat):
        work = lanes.copy()
        t0 = time.perf_counter()
        apply(work, *masks)
        best = min(best, time.perf_counter() - t0)
    return best, work


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = sorted(kernel.BACKENDS)
    print(f"backends: {', '.join(backends)}")
    header = f"{'workload':<42} {'gates':>8} {'states':>8}" + "".join(f" {b:>10}" for b in backends)
    print(header + ("   speedup" if len(backends) > 1 else ""))
    for name, circuit, states in workloads():
        lanes = _to_lanes(states, circuit.num_wires)
        times, outs = {}, {}
        for b in backends:
            times[b], outs[b] = bench(kernel.get_backend(b), circuit, lanes, args.repeat)
        results = {b: _from_lanes(o, len(states)) for b, o in outs.items()}
        assert len({tuple(r) for r in results.values()}) == 1, "backends disagree"
        row = f"{name:<42} {len(circuit):>8} {len(states):>8}"
        row += "".join(f" {times[b] * 1e3:>8.2f}ms" for b in backends)
        if len(backends) > 1:
            row += f" {times['python'] / times['cython']:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
