"""Classical precomputation for the modular networks."""
from __future__ import annotations


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def mod_inverse(a: int, N: int) -> int:
    if N < 2:
        raise ValueError(f"modulus must be at least 2, got {N}")
    g, x, _ = egcd(a % N, N)
    if g != 1:
        raise ValueError(f"{a} has no inverse modulo {N} (gcd = {g})")
    return x % N


def mod_pow(a: int, e: int, N: int) -> int:
    """Square-and-multiply ``a**e mod N``."""
    if N < 2:
        raise ValueError(f"modulus must be at least 2, got {N}")
    if e < 0:
        raise ValueError("negative exponent")
    result = 1
    base = a % N
    while e:
        if e & 1:
            result = result * base % N
        base = base * base % N
        e >>= 1
    return result
