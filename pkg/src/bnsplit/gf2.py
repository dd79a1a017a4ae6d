"""Bit-matrices over F2: rank, kernel, homology dimension.

The elimination kernel is compiled (``_gf2_ext``) when available and
falls back to ``_gf2_py`` otherwise.  Set ``BNSPLIT_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import _gf2_py

if os.environ.get("BNSPLIT_PURE_PYTHON"):
    kernel = _gf2_py
    BACKEND = "python"
else:
    try:
        from . import _gf2_ext as kernel  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        kernel = _gf2_py
        BACKEND = "python"

__all__ = [
    "BACKEND",
    "kernel",
    "MatrixF2",
    "ComposabilityError",
    "rank_f2",
    "kernel_basis_f2",
    "homology_f2",
    "pack_rows",
]


class ComposabilityError(ValueError):
    """Two matrices that should form a complex do not compose to zero."""


def pack_rows(rows: list[int], ncols: int) -> np.ndarray:
    """Int bitsets -> ``uint64`` array of shape ``(len(rows), words)``."""
    words = max((ncols + 63) // 64, 1)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    for r, v in enumerate(rows):
        if v:
            out[r] = np.frombuffer(v.to_bytes(words * 8, "little"), dtype="<u8")
    return out


@dataclass
class MatrixF2:
    """``nrows x ncols`` matrix over F2; ``rows[r]`` is an int bitset."""

    nrows: int
    ncols: int
    rows: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.nrows, self.ncols = int(self.nrows), int(self.ncols)
        if not self.rows:
            self.rows = [0] * self.nrows
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        limit = 1 << self.ncols
        if any(r < 0 or r >= limit for r in self.rows):
            raise ValueError("row wider than ncols")

    @classmethod
    def identity(cls, n: int) -> "MatrixF2":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_dense(cls, dense) -> "MatrixF2":
        dense = np.asarray(dense) % 2
        nrows, ncols = dense.shape
        rows = [sum(1 << c for c in range(ncols) if dense[r, c]) for r in range(nrows)]
        return cls(nrows, ncols, rows)

    def to_dense(self) -> np.ndarray:
        return np.array(
            [[r >> c & 1 for c in range(self.ncols)] for r in self.rows], dtype=np.uint8
        ).reshape(self.nrows, self.ncols)

    def __matmul__(self, other: "MatrixF2") -> "MatrixF2":
        # row-vector convention: (self @ other)[r] = sum of other's rows picked by self[r]
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return MatrixF2(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows)


def rank_f2(m: MatrixF2) -> int:
    if not m.nrows or not m.ncols:
        return 0
    return kernel.rank(pack_rows(m.rows, m.ncols))


def kernel_basis_f2(m: MatrixF2) -> list[int]:
    """Basis of ``{v : v @ m = 0}`` (row-vector convention) as int bitsets."""
    # echelon form of [m | I]; rows reducing to zero give kernel vectors
    basis = []
    echelon: list[tuple[int, int, int]] = []  # (pivot bit, row, tag)
    for r, row in enumerate(m.rows):
        tag = 1 << r
        for pbit, prow, ptag in echelon:
            if row & pbit:
                row ^= prow
                tag ^= ptag
        if row:
            echelon.append((row & -row, row, tag))
        else:
            basis.append(tag)
    return basis


def homology_f2(d_prev: MatrixF2 | None, d_next: MatrixF2 | None, dim: int | None = None) -> int:
    """``dim ker(d_next) - rank(d_prev)`` for ``C_prev -> C -> C_next``.

    Row-vector convention: ``d_prev`` is ``dim C_prev x dim C`` and
    ``d_next`` is ``dim C x dim C_next``.
    """
    if dim is None:
        dim = d_next.nrows if d_next is not None else d_prev.ncols
    if d_prev is not None and d_next is not None:
        if d_prev.ncols != d_next.nrows:
            raise ComposabilityError("inner dimensions differ")
        if not (d_prev @ d_next).is_zero():
            raise ComposabilityError("consecutive differentials do not compose to zero")
    r_next = rank_f2(d_next) if d_next is not None else 0
    r_prev = rank_f2(d_prev) if d_prev is not None else 0
    return dim - r_next - r_prev
