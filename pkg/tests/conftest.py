import random

import pytest

from revarith.circuit import CNOT, NOT, TOFFOLI, Circuit

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
                     + (f" -- {detail}" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


def random_circuit(rng: random.Random, num_wires: int, num_gates: int) -> Circuit:
    gates = []
    for _ in range(num_gates):
        arity = rng.randint(1, min(3, num_wires))
        wires = rng.sample(range(num_wires), arity)
        gates.append((NOT, CNOT, TOFFOLI)[arity - 1](*wires))
    return Circuit(num_wires, tuple(gates))
