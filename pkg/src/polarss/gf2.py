"""Dense GF(2) vectors and matrices.

Bit vectors and bit matrices are plain ``numpy.uint8`` arrays holding 0/1
entries (1-D and 2-D respectively). Functions here never mutate their
inputs; arrays handed out from caches are marked read-only.

Public index sets (``support`` and friends) are 1-based, matching the way
positions are written everywhere else in the package.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import ShapeError, SizeError

#: Largest exponent accepted by :func:`polar_generator` / :func:`dual_generator`.
MAX_EXPONENT = 20

_G2 = np.array([[1, 0], [1, 1]], dtype=np.uint8)
_H2 = np.array([[1, 1], [0, 1]], dtype=np.uint8)


def as_bitvector(v) -> np.ndarray:
    """Validate and convert ``v`` (sequence, array or '0'/'1' string) to a bit vector."""
    if isinstance(v, str):
        v = [int(ch) for ch in v.strip()]
    arr = np.asarray(v)
    if arr.ndim != 1 or arr.size == 0:
        raise ShapeError(f"expected a non-empty 1-D bit vector, got shape {arr.shape}")
    if not ((arr == 0) | (arr == 1)).all():
        raise ShapeError("bit vector entries must be 0 or 1")
    return arr.astype(np.uint8)


def as_bitmatrix(m) -> np.ndarray:
    arr = np.asarray(m)
    if arr.ndim != 2 or 0 in arr.shape:
        raise ShapeError(f"expected a non-empty 2-D bit matrix, got shape {arr.shape}")
    if not ((arr == 0) | (arr == 1)).all():
        raise ShapeError("bit matrix entries must be 0 or 1")
    return arr.astype(np.uint8)


def kron(a, b) -> np.ndarray:
    """Kronecker product over GF(2)."""
    return (np.kron(as_bitmatrix(a), as_bitmatrix(b)) & 1).astype(np.uint8)


def _kron_power(base: np.ndarray, n: int, max_exponent: int) -> np.ndarray:
    if n < 0:
        raise ShapeError(f"exponent must be non-negative, got {n}")
    if n > max_exponent:
        raise SizeError(f"exponent {n} exceeds cap {max_exponent}")
    out = np.ones((1, 1), dtype=np.uint8)
    for _ in range(n):
        out = np.kron(base, out).astype(np.uint8)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=32)
def _cached_power(which: str, n: int, max_exponent: int) -> np.ndarray:
    return _kron_power(_G2 if which == "G" else _H2, n, max_exponent)


def polar_generator(n: int, max_exponent: int = MAX_EXPONENT) -> np.ndarray:
    """Return ``G_N``, the n-fold Kronecker power of ``[[1, 0], [1, 1]]`` (N = 2**n).

    No bit-reversal is applied. Entry ``(i, j)`` (0-based) is 1 exactly when
    the binary digits of ``j`` are a subset of those of ``i``.
    """
    return _cached_power("G", int(n), int(max_exponent))


def dual_generator(n: int, max_exponent: int = MAX_EXPONENT) -> np.ndarray:
    """Return ``H_N``, the n-fold Kronecker power of ``[[1, 1], [0, 1]]``.

    ``H_N[i, j] == G_N[N-1-i, N-1-j]`` for all 0-based ``i, j``.
    """
    return _cached_power("H", int(n), int(max_exponent))


def matmul(a, b) -> np.ndarray:
    """Matrix (or vector-matrix) product mod 2."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    # floating-point BLAS is exact here: every partial sum is an integer no
    # larger than the inner dimension, below 2**24 (float32) or 2**53 (float64)
    dtype = np.float32 if b.shape[0] < 1 << 24 else np.float64
    prod = np.asarray(a, dtype=dtype) @ np.asarray(b, dtype=dtype)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


def _row_ints(m: np.ndarray) -> list[int]:
    # bit j of the integer is column j
    weights = [1 << j for j in range(m.shape[1])]
    return [sum(w for w, bit in zip(weights, row) if bit) for row in m.tolist()]


def _int_to_bits(x: int, length: int) -> np.ndarray:
    return np.array([(x >> j) & 1 for j in range(length)], dtype=np.uint8)


def _eliminate(rows: list[int]) -> dict[int, tuple[int, int]]:
    """Incremental echelon basis keyed by leading bit.

    Rows are inserted in index order, so the earliest row wins every pivot.
    Each entry carries the combination (bitmask over row indices) producing it.
    """
    basis: dict[int, tuple[int, int]] = {}
    for i, v in enumerate(rows):
        combo = 1 << i
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = (v, combo)
                break
            bv, bc = basis[lead]
            v ^= bv
            combo ^= bc
    return basis


def rank(m) -> int:
    """Rank over GF(2)."""
    return len(_eliminate(_row_ints(as_bitmatrix(m))))


def solve(m, target) -> np.ndarray | None:
    """Find ``x`` with ``x @ m == target`` over GF(2), or ``None`` if none exists.

    ``m`` is rows x cols and ``target`` has ``cols`` entries; the result has
    one coefficient per row of ``m``. Elimination always pivots on the
    lowest-index row available, so the answer is deterministic.
    """
    m = as_bitmatrix(m)
    target = as_bitvector(target)
    if target.size != m.shape[1]:
        raise ShapeError(f"target has length {target.size}, matrix has {m.shape[1]} columns")
    combo = solve_ints(_row_ints(m), _row_ints(target[None, :])[0])
    return None if combo is None else _int_to_bits(combo, m.shape[0])


def solve_ints(rows: list[int], target: int) -> int | None:
    """:func:`solve` on rows packed as integers; returns the row-selection mask."""
    basis = _eliminate(rows)
    v = target
    combo = 0
    while v:
        lead = v.bit_length() - 1
        if lead not in basis:
            return None
        bv, bc = basis[lead]
        v ^= bv
        combo ^= bc
    return combo


def support(v) -> frozenset[int]:
    """1-based positions of the nonzero entries of ``v``."""
    return frozenset(int(i) + 1 for i in np.flatnonzero(as_bitvector(v)))


def weight(v) -> int:
    return int(as_bitvector(v).sum())


def covers(a, b) -> bool:
    """True iff ``support(b)`` is contained in ``support(a)``."""
    a = as_bitvector(a)
    b = as_bitvector(b)
    if a.size != b.size:
        raise ShapeError(f"length mismatch: {a.size} vs {b.size}")
    return bool(np.all(a >= b))


def span(m) -> np.ndarray:
    """All ``2**rows`` combinations of the rows of ``m``, one codeword per row.

    Row ``c`` of the result is the combination selected by the bits of ``c``
    (bit ``r`` selects row ``r``), so row 0 is the zero word.
    """
    m = as_bitmatrix(m)
    out = np.zeros((1, m.shape[1]), dtype=np.uint8)
    for row in m:
        out = np.concatenate([out, out ^ row])
    return out


def pack_rows(m) -> np.ndarray | list[int]:
    """Pack each row into an integer bitmask (bit j = 0-based column j).

    Returns a ``uint64`` array when there are at most 64 columns, otherwise a
    list of Python ints.
    """
    m = np.asarray(m, dtype=np.uint8)
    if m.ndim == 1:
        m = m[None, :]
    if m.shape[1] <= 64:
        weights = np.left_shift(np.uint64(1), np.arange(m.shape[1], dtype=np.uint64))
        return (m.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    return _row_ints(m)


def mask_from_positions(positions: Iterable[int]) -> int:
    """Bitmask (bit i-1 set) for a collection of 1-based positions."""
    out = 0
    for i in positions:
        out |= 1 << (int(i) - 1)
    return out


def positions_from_mask(mask: int) -> tuple[int, ...]:
    mask = int(mask)
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def format_matrix(m) -> str:
    """Rows as '0'/'1' strings joined by newlines."""
    m = np.atleast_2d(np.asarray(m, dtype=np.uint8))
    return "\n".join("".join(str(int(b)) for b in row) for row in m)


def parse_matrix(text: str) -> np.ndarray:
    rows = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ShapeError("rows must be non-empty and of equal length")
    return as_bitmatrix([[int(ch) for ch in r] for r in rows])


def nullspace(m) -> np.ndarray:
    """Basis (as rows) of ``{y : m @ y == 0}`` over GF(2)."""
    m = as_bitmatrix(m)
    rows, cols = m.shape
    r = m.copy()
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        hits = np.flatnonzero(r[row:, col]) if row < rows else []
        if len(hits) == 0:
            continue
        piv = row + int(hits[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        others = np.flatnonzero(r[:, col])
        others = others[others != row]
        r[others] ^= r[row]
        pivots.append(col)
        row += 1
        if row == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for i, pc in enumerate(pivots):
            basis[b, pc] = r[i, f]
    return basis
