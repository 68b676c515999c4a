"""Pure-Python bit-sliced gate kernel (fallback for the compiled one).

Each lane row is lifted into one Python integer, so a gate costs a single
big-integer XOR/AND regardless of how many states are packed.
"""
from __future__ import annotations

import numpy as np


def apply_gates(lanes: np.ndarray, ctrl1: np.ndarray, ctrl2: np.ndarray, target: np.ndarray) -> None:
    n_words = lanes.shape[1]
    nbytes = 8 * n_words
    full = (1 << (64 * n_words)) - 1
    rows = [int.from_bytes(row.tobytes(), "little") for row in lanes]
    for c1, c2, t in zip(ctrl1.tolist(), ctrl2.tolist(), target.tolist()):
        if c1 < 0:
            rows[t] ^= full
        elif c2 < 0:
            rows[t] ^= rows[c1]
        else:
            rows[t] ^= rows[c1] & rows[c2]
    for w, value in enumerate(rows):
        lanes[w] = np.frombuffer(value.to_bytes(nbytes, "little"), dtype="<u8")
