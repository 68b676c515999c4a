"""Reference arithmetic on plain Python integers.

Nothing here imports the circuit, synthesis or simulation code; these are the
independent side of every verification.
"""


def oracle_add(a: int, b: int) -> int:
    return a + b


def oracle_sub(x: int, y: int, bits: int) -> int:
    """``y - x`` wrapped to ``bits`` bits (two's complement)."""
    return (y - x) % (1 << bits)


def oracle_modadd(a: int, b: int, N: int) -> int:
    return (a + b) % N


def oracle_cmult(c: int, x: int, a: int, N: int) -> int:
    return (a * x) % N if c else x


def oracle_modexp(a: int, x: int, N: int) -> int:
    return pow(a, x, N)
