"""Access structure of the polar secret-sharing scheme.

A coalition ``T`` (1-based share positions, never containing ``p``) is
qualified when column ``g_p`` of ``G_U`` lies in the span of the columns at
``T``. Equivalently some dual codeword (row space of ``H_U``) has a 1 at
``p`` and support inside ``T + {p}``. Both routes are implemented:
:func:`is_qualified` uses column-span elimination, :func:`is_qualified_dual`
searches the enumerated dual codewords.

Two modes are supported:

``full``
    only the coalition's own share values are available.
``effective``
    the share values at frozen positions are additionally public (published
    by the dealer with each dealing), so frozen columns join the span for
    free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Literal, NamedTuple

import numpy as np

from . import gf2
from .construction import CodeSpec, dual_submatrix, generator_submatrix
from .errors import ArgumentError, SizeError

Mode = Literal["full", "effective"]
MODES = ("full", "effective")

#: Largest dual dimension N - k that :func:`enumerate_p_codewords` accepts.
MAX_DUAL_DIMENSION = 24
#: Largest generator dimension accepted by :func:`all_minimal_check`.
MAX_CODE_DIMENSION = 20
# pairwise cover check is used up to this many codewords; above it the
# equivalent rank criterion takes over
_PAIRWISE_LIMIT = 4096


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ArgumentError(f"mode must be 'full' or 'effective', got {mode!r}")


def coalition(spec: CodeSpec, members: Iterable[int], p: int | None = None,
              allow_empty: bool = False) -> tuple[int, ...]:
    """Validate ``members`` against ``spec`` and return them ascending."""
    p = spec.p if p is None else p
    out = sorted(int(i) for i in members)
    if len(set(out)) != len(out):
        raise ArgumentError("coalition has duplicate members")
    if not out and not allow_empty:
        raise ArgumentError("coalition is empty")
    if p in out:
        raise ArgumentError(f"coalition must not contain the secret position {p}")
    bad = [i for i in out if not 1 <= i <= spec.N]
    if bad:
        raise ArgumentError(f"positions out of range 1..{spec.N}: {bad}")
    return tuple(out)


def _check_p(spec: CodeSpec, p: int | None) -> int:
    p = spec.p if p is None else int(p)
    if not 1 <= p <= spec.N:
        raise ArgumentError(f"secret position must lie in 1..{spec.N}, got {p}")
    return p


def available_positions(spec: CodeSpec, members, mode: str, p: int | None = None) -> tuple[int, ...]:
    """Positions whose values the coalition can use in ``mode``."""
    _check_mode(mode)
    p = _check_p(spec, p)
    pos = set(members)
    if mode == "effective":
        pos.update(i for i in spec.frozen if i != p)
    return tuple(sorted(pos))


def combination(spec: CodeSpec, members, mode: str = "full", p: int | None = None) -> tuple[int, ...] | None:
    """Positions whose share bits XOR to the secret, or ``None`` if unqualified.

    These are the positions ``i_j`` with coefficient ``x_j = 1`` in
    ``g_p = sum_j x_j g_{i_j}``; in effective mode they may include frozen
    positions. Deterministic for identical inputs.
    """
    p = _check_p(spec, p)
    members = coalition(spec, members, p, allow_empty=True)
    pos = available_positions(spec, members, mode, p)
    cols = _column_ints(spec)
    if not cols[p - 1]:
        return ()
    combo = gf2.solve_ints([cols[i - 1] for i in pos], cols[p - 1])
    if combo is None:
        return None
    return tuple(i for j, i in enumerate(pos) if combo >> j & 1)


@lru_cache(maxsize=64)
def _column_ints(spec: CodeSpec) -> tuple[int, ...]:
    # column j of G_U packed as an integer, bit r = row r
    return tuple(int(c) for c in gf2.pack_rows(generator_submatrix(spec).T))


def is_qualified(spec: CodeSpec, members, mode: str = "full", p: int | None = None) -> bool:
    """Column-span test: is ``g_p`` a combination of the available columns?"""
    return combination(spec, members, mode, p) is not None


@lru_cache(maxsize=64)
def _p_codeword_masks(spec: CodeSpec, p: int, max_dual_dimension: int):
    H_U = dual_submatrix(spec)
    d = H_U.shape[0]
    if d > max_dual_dimension:
        raise SizeError(f"dual dimension {d} exceeds enumeration bound {max_dual_dimension}")
    col = H_U[:, p - 1]
    if not col.any():
        return np.zeros(0, dtype=np.uint64) if spec.N <= 64 else []
    pivot = int(np.flatnonzero(col)[0])
    others = [H_U[r] ^ H_U[pivot] if col[r] else H_U[r] for r in range(d) if r != pivot]
    # p-codewords = pivot row + span(others), since others all vanish at p
    base = gf2.pack_rows(H_U[pivot])[0]
    gens = gf2.pack_rows(np.array(others)) if others else []
    if spec.N <= 64:
        masks = np.array([base], dtype=np.uint64)
        for g in gens:
            masks = np.concatenate([masks, masks ^ np.uint64(g)])
        masks.flags.writeable = False
        return masks
    masks = [int(base)]
    for g in gens:
        masks = masks + [m ^ int(g) for m in masks]
    return masks


def enumerate_p_codewords(spec: CodeSpec, p: int | None = None,
                          max_dual_dimension: int = MAX_DUAL_DIMENSION) -> np.ndarray:
    """All codewords of the dual code (row space of ``H_U``) with a 1 at ``p``.

    Returned as a (count, N) bit array; empty when no dual codeword has
    ``c_p = 1``.
    """
    p = _check_p(spec, p)
    masks = _p_codeword_masks(spec, p, max_dual_dimension)
    N = spec.N
    out = np.zeros((len(masks), N), dtype=np.uint8)
    for j in range(N):
        if N <= 64:
            out[:, j] = (masks >> np.uint64(j)) & np.uint64(1)
        else:
            out[:, j] = [(m >> j) & 1 for m in masks]
    return out


def is_qualified_dual(spec: CodeSpec, members, mode: str = "full", p: int | None = None) -> bool:
    """Dual-codeword test: some p-codeword has support inside available + {p}."""
    p = _check_p(spec, p)
    members = coalition(spec, members, p, allow_empty=True)
    pos = available_positions(spec, members, mode, p)
    allowed = gf2.mask_from_positions(pos + (p,))
    masks = _p_codeword_masks(spec, p, MAX_DUAL_DIMENSION)
    if spec.N <= 64:
        outside = np.uint64(~allowed & ((1 << 64) - 1))
        return bool(np.any((masks & outside) == 0))
    return any(m & ~allowed == 0 for m in masks)


def _minimal_masks(masks) -> list[int]:
    """Subset-minimal members of a collection of bitmasks (deduplicated)."""
    uniq = sorted(set(int(m) for m in masks), key=lambda m: (bin(m).count("1"), m))
    kept: list[int] = []
    if uniq and uniq[-1] < 1 << 64:
        arr = np.zeros(len(uniq), dtype=np.uint64)
        n_kept = 0
        for m in uniq:
            mm = np.uint64(m)
            if n_kept and np.any((arr[:n_kept] & ~mm) == 0):
                continue
            arr[n_kept] = mm
            n_kept += 1
            kept.append(m)
        return kept
    for m in uniq:
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class AccessStructure:
    """Minimal access sets of the scheme for secret position ``p``.

    ``minimal_sets`` are ascending member tuples in lexicographic order. In
    effective mode an empty tuple means the public frozen-position values
    alone determine the secret.
    """

    p: int
    mode: Mode
    minimal_sets: tuple[tuple[int, ...], ...]
    dictators: frozenset[int] = field(default=frozenset())

    def is_qualified(self, members) -> bool:
        s = set(members)
        return any(s.issuperset(m) for m in self.minimal_sets)

    def membership_counts(self) -> dict[int, int]:
        """Number of minimal sets each position belongs to."""
        counts: dict[int, int] = {}
        for m in self.minimal_sets:
            for i in m:
                counts[i] = counts.get(i, 0) + 1
        return dict(sorted(counts.items()))


def _intersection(sets) -> frozenset[int]:
    sets = [set(s) for s in sets]
    if not sets:
        return frozenset()
    return frozenset(set.intersection(*sets))


def minimal_access_sets(spec: CodeSpec, mode: str = "full", p: int | None = None,
                        max_dual_dimension: int = MAX_DUAL_DIMENSION) -> AccessStructure:
    """Minimal access sets from the minimal p-codewords of the dual code.

    Full mode: supports (without ``p``) of the minimal p-codewords. Effective
    mode: those same sets with frozen positions deleted, then reduced again
    to the subset-minimal ones.
    """
    _check_mode(mode)
    p = _check_p(spec, p)
    masks = _p_codeword_masks(spec, p, max_dual_dimension)
    pbit = 1 << (p - 1)
    full = _minimal_masks([int(m) & ~pbit for m in masks])
    if mode == "effective":
        frozen = gf2.mask_from_positions(spec.frozen)
        full = _minimal_masks([m & ~frozen for m in full])
    sets = tuple(sorted(gf2.positions_from_mask(m) for m in full))
    return AccessStructure(p, mode, sets, _intersection(sets))


def row_coalitions(spec: CodeSpec, mode: str = "full", p: int | None = None,
                   reduce: bool | None = None) -> tuple[tuple[int, ...], ...]:
    """Coalitions read off individual ``H_U`` rows with a 1 at ``p``.

    Each such row is a p-codeword, so its support minus ``p`` (minus frozen
    positions in effective mode) is a qualified coalition. This is the
    per-row listing, not the set of minimal access sets: rows need not be
    minimal codewords. With ``reduce`` (default: on in effective mode only)
    sets that contain another listed set are dropped. Order follows the rows
    of ``H_U``.
    """
    _check_mode(mode)
    p = _check_p(spec, p)
    drop = {p} | (set(spec.frozen) if mode == "effective" else set())
    out = []
    for row in dual_submatrix(spec):
        if row[p - 1]:
            out.append(tuple(int(i) + 1 for i in np.flatnonzero(row) if int(i) + 1 not in drop))
    if reduce is None:
        reduce = mode == "effective"
    if reduce:
        keep = set(_minimal_masks([gf2.mask_from_positions(c) for c in out]))
        seen = set()
        reduced = []
        for c in out:
            m = gf2.mask_from_positions(c)
            if m in keep and m not in seen:
                seen.add(m)
                reduced.append(c)
        out = reduced
    return tuple(out)


def dictator_analysis(structure: AccessStructure) -> frozenset[int]:
    """Members present in every minimal access set."""
    if not structure.minimal_sets:
        raise ArgumentError("access structure has no minimal sets")
    return _intersection(structure.minimal_sets)


class MinimalityReport(NamedTuple):
    sufficient_by_weight: bool
    exact: bool
    w_min: int
    w_max: int



def all_minimal_check(gen) -> MinimalityReport:
    """Weight-ratio sufficient condition vs exact minimality of every nonzero codeword.

    ``sufficient_by_weight`` is ``w_min / w_max > 1/2``; ``exact`` checks that
    no nonzero codeword's support strictly contains another's.
    """
    gen = gf2.as_bitmatrix(gen)
    d = gf2.rank(gen)
    if d > MAX_CODE_DIMENSION:
        raise SizeError(f"code dimension {d} exceeds bound {MAX_CODE_DIMENSION}")
    if d == 0:
        raise ArgumentError("generator spans only the zero word")
    words = gf2.span(gen[_independent_rows(gen)])[1:]
    weights = words.sum(axis=1)
    w_min, w_max = int(weights.min()), int(weights.max())
    sufficient = 2 * w_min > w_max
    if len(words) <= _PAIRWISE_LIMIT:
        masks = [int(m) for m in gf2.pack_rows(words)]
        exact = not any(a != b and a & b == a for a in masks for b in masks)
    else:
        # c is minimal iff the subcode supported inside supp(c) has dimension 1
        exact = all(d - gf2.rank(gen[:, w == 0]) == 1 if (w == 0).any() else d == 1
                    for w in words)
    return MinimalityReport(sufficient, exact, w_min, w_max)


def _independent_rows(gen: np.ndarray) -> list[int]:
    rows: list[int] = []
    for i in range(gen.shape[0]):
        if gf2.rank(gen[rows + [i]]) == len(rows) + 1:
            rows.append(i)
    return rows


def minimal_p_codewords(gen, p: int) -> np.ndarray:
    """Minimal codewords of span(gen) with a 1 at position ``p`` (1-based)."""
    gen = gf2.as_bitmatrix(gen)
    words = gf2.span(gen[_independent_rows(gen)])[1:]
    masks = [int(m) for m in gf2.pack_rows(words)]
    nonzero = sorted(set(masks), key=lambda m: bin(m).count("1"))
    minimal = [m for m in nonzero if not any(o != m and o & m == o for o in nonzero)]
    pbit = 1 << (p - 1)
    keep = [m for m in minimal if m & pbit]
    return np.array([[(m >> j) & 1 for j in range(gen.shape[1])] for m in keep],
                    dtype=np.uint8).reshape(len(keep), gen.shape[1])


def theorem1_count_check(gen, p: int) -> bool:
    """Whether a code with only minimal nonzero words yields 2**(d-1) minimal access sets.

    Requires every nonzero codeword of span(gen) to be minimal and column
    ``p`` to be nonzero. Counts the codewords with ``c_p = 1`` and the minimal
    ones among them; both must equal 2**(d-1).
    """
    gen = gf2.as_bitmatrix(gen)
    if not 1 <= p <= gen.shape[1]:
        raise ArgumentError(f"p must lie in 1..{gen.shape[1]}")
    if not gen[:, p - 1].any():
        raise ArgumentError(f"column {p} of the generator is zero")
    if not all_minimal_check(gen).exact:
        raise ArgumentError("not every nonzero codeword is minimal")
    d = gf2.rank(gen)
    words = gf2.span(gen[_independent_rows(gen)])
    count = int(words[:, p - 1].sum())
    minimal = minimal_p_codewords(gen, p)
    supports = {tuple(np.flatnonzero(w)) for w in minimal}
    return count == 1 << (d - 1) and len(supports) == 1 << (d - 1)
