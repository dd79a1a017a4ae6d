"""Pure-Python GF(2) elimination kernels (fallback for ``_gf2_ext``).

Matrices are ``uint64`` arrays of shape ``(rows, words)``; bit ``b`` of a
row lives in word ``b // 64`` at position ``b % 64``.  Internally each row
is turned into one Python int and XORed whole.
"""

from __future__ import annotations

import numpy as np


def _to_ints(mat: np.ndarray) -> list[int]:
    return [int.from_bytes(mat[r].tobytes(), "little") for r in range(mat.shape[0])]


def _write_back(mat: np.ndarray, rows: list[int]) -> None:
    nbytes = mat.shape[1] * 8
    for r, v in enumerate(rows):
        mat[r] = np.frombuffer(v.to_bytes(nbytes, "little"), dtype="<u8")


def reduce_level(mat, row_q, col_q, shift, row_alive, col_alive):
    """Cancel every pivot ``(x, y)`` with ``col_q[y] == row_q[x] + shift``.

    For each alive row ``x`` (in index order, repeated until nothing
    changes) the lowest alive column ``y`` of the right degree is chosen;
    row ``x`` is added to every other alive row containing ``y``, then
    ``x`` and ``y`` are marked dead.  Works in place and returns the
    pivots in the order found.
    """
    rows = _to_ints(mat)
    masks: dict[int, int] = {}
    for c in range(len(col_q)):
        if col_alive[c]:
            q = int(col_q[c])
            masks[q] = masks.get(q, 0) | 1 << c
    live = [r for r in range(len(rows)) if row_alive[r] and rows[r]]
    pivots = []
    found = True
    while found:
        found = False
        for x in live:
            if not row_alive[x]:
                continue
            cand = rows[x] & masks.get(int(row_q[x]) + shift, 0)
            if not cand:
                continue
            y = (cand & -cand).bit_length() - 1
            bit = 1 << y
            rx = rows[x]
            for z in live:
                if z != x and rows[z] & bit and row_alive[z]:
                    rows[z] ^= rx
            row_alive[x] = 0
            col_alive[y] = 0
            masks[int(col_q[y])] &= ~bit
            pivots.append((x, y))
            found = True
        live = [r for r in live if row_alive[r]]
    _write_back(mat, rows)
    return pivots


def rank(mat) -> int:
    work = np.array(mat, dtype=np.uint64, copy=True)
    r = work.shape[0]
    c = work.shape[1] * 64
    zeros_r = np.zeros(r, dtype=np.int64)
    zeros_c = np.zeros(c, dtype=np.int64)
    return len(
        reduce_level(
            work, zeros_r, zeros_c, 0, np.ones(r, dtype=np.uint8), np.ones(c, dtype=np.uint8)
        )
    )
