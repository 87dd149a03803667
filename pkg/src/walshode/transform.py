"""Classical Walsh-Hadamard transforms with symmetric 1/sqrt(N) normalization.

Two code paths compute the same unitary map:

  * wht_naive: dense sign-table matvec, O(N^2); kept as the oracle.
  * fwht:      in-place butterfly, exactly N*log2(N) additions and
               subtractions plus N final scalings by 1/sqrt(N).

With the symmetric normalization the transform is an involution, so the
inverse transform is the same computation (iwht is provided for call-site
readability).  Butterfly stages run in a fixed stride-doubling order, so
results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .walsh import character_table


@dataclass
class OpCount:
    """Arithmetic tally for one counting scope (never shared globally)."""

    additions: int = 0
    multiplications: int = 0
    square_roots: int = 0

    @property
    def total(self) -> int:
        return self.additions + self.multiplications + self.square_roots

    def as_dict(self) -> dict[str, int]:
        return {
            "additions": self.additions,
            "multiplications": self.multiplications,
            "square_roots": self.square_roots,
            "total": self.total,
        }


def _require_power_of_two(size: int) -> int:
    """Return n = log2(size) or raise for invalid lengths."""
    if size < 2 or size & (size - 1):
        raise ValueError(f"vector length must be a power of two >= 2, got {size}")
    return size.bit_length() - 1


def _butterfly(a: np.ndarray, count: OpCount | None = None) -> np.ndarray:
    """Unnormalized in-place Hadamard butterfly (pure additions/subtractions)."""
    N = a.size
    h = 1
    while h < N:
        pairs = a.reshape(-1, 2, h)
        lo = pairs[:, 0, :] + pairs[:, 1, :]
        hi = pairs[:, 0, :] - pairs[:, 1, :]
        pairs[:, 0, :] = lo
        pairs[:, 1, :] = hi
        if count is not None:
            count.additions += N
        h *= 2
    return a


def wht_naive(v, count: OpCount | None = None) -> np.ndarray:
    """Transform by explicit sign-table matvec; the O(N^2) oracle."""
    a = np.asarray(v, dtype=float)
    n = _require_power_of_two(a.size)
    N = a.size
    table = character_table(n).astype(float)
    out = table @ a
    out *= 1.0 / math.sqrt(N)
    if count is not None:
        count.additions += N * (N - 1)
        count.multiplications += N * N + N
        count.square_roots += 1
    return out


def fwht(v, count: OpCount | None = None) -> np.ndarray:
    """Fast transform: butterfly then one 1/sqrt(N) scaling pass."""
    a = np.array(v, dtype=float)
    _require_power_of_two(a.size)
    _butterfly(a, count)
    a *= 1.0 / math.sqrt(a.size)
    if count is not None:
        count.multiplications += a.size
        count.square_roots += 1
    return a


def iwht(v, count: OpCount | None = None) -> np.ndarray:
    """Inverse transform; identical to fwht because the map is an involution."""
    return fwht(v, count)
