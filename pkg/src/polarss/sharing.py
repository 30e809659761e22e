"""Dealer and combiner for polar-code secret sharing.

The dealer draws ``u`` uniformly among the solutions of ``u . g_p = s``,
forms the codeword ``t = u G_U`` and hands ``t_i`` to member ``P_i`` for
``i`` in ``A`` minus ``p``. The values at frozen positions are published
alongside as public shares. ``t_p`` equals the secret and is never emitted.

Seeded generators are for tests only; without one, randomness comes from
the :mod:`secrets` module.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal, NamedTuple

import numpy as np

from . import gf2
from .access import _check_mode, _check_p, available_positions, coalition, combination
from .construction import CodeSpec, code_digest, generator_submatrix
from .errors import (
    ArgumentError,
    DigestMismatchError,
    FormatError,
    IntegrityError,
    SizeError,
    UnqualifiedError,
)

SHARES_MAGIC = "POLARSS-SHARES v1"

#: Largest dimension accepted by :func:`security_audit`.
MAX_AUDIT_DIMENSION = 20


@dataclass(frozen=True)
class Share:
    """One share bit. ``role`` is ``"public"`` exactly for frozen positions."""

    position: int
    bit: int
    role: Literal["member", "public"] = "member"


@dataclass(frozen=True)
class Dealing:
    code_digest: str
    p: int
    member_shares: tuple[Share, ...]
    public_values: tuple[Share, ...]

    @property
    def shares(self) -> tuple[Share, ...]:
        return self.public_values + self.member_shares

    def share_for(self, position: int) -> Share:
        for s in self.shares:
            if s.position == position:
                return s
        raise KeyError(position)

    def select(self, positions: Iterable[int]) -> list[Share]:
        """Shares at ``positions`` (public or member)."""
        return [self.share_for(i) for i in positions]


def _random_bits(count: int, rng: np.random.Generator | None) -> np.ndarray:
    if count == 0:
        return np.zeros(0, dtype=np.uint8)
    if rng is None:
        word = secrets.randbits(count)
        return np.array([(word >> j) & 1 for j in range(count)], dtype=np.uint8)
    return rng.integers(0, 2, size=count, dtype=np.uint8)


def coset_offset(spec: CodeSpec) -> np.ndarray:
    """Fixed word ``u_{A^c} G_N(A^c)`` added to every codeword (zero by default)."""
    if not any(spec.frozen_values):
        return np.zeros(spec.N, dtype=np.uint8)
    G = gf2.polar_generator(spec.n)
    rows = G[[i - 1 for i in spec.frozen]]
    return gf2.matmul(np.array(spec.frozen_values, dtype=np.uint8), rows)


def sample_information_vector(g_p: np.ndarray, target: int, free_bits: np.ndarray) -> np.ndarray:
    """Turn k uniform bits into a uniform solution of ``u . g_p = target``.

    The first nonzero coordinate of ``g_p`` is overwritten so that the
    constraint holds; the other k-1 bits stay as drawn.
    """
    u = free_bits.astype(np.uint8).copy()
    pivot = int(np.flatnonzero(g_p)[0])
    u[pivot] = 0
    u[pivot] = (int(target) + int(np.dot(u, g_p))) & 1
    return u


def deal(spec: CodeSpec, secret: int, rng: np.random.Generator | None = None) -> Dealing:
    """Share one secret bit."""
    if secret not in (0, 1):
        raise ArgumentError(f"secret must be 0 or 1, got {secret!r}")
    G_U = generator_submatrix(spec)
    p = spec.p
    offset = coset_offset(spec)
    g_p = G_U[:, p - 1]
    if not g_p.any():  # impossible for polar codes: G_N(A, A) is invertible
        raise ArgumentError(f"column {p} of G_U is zero")
    u = sample_information_vector(g_p, secret ^ int(offset[p - 1]), _random_bits(spec.k, rng))
    t = gf2.matmul(u, G_U) ^ offset
    assert int(t[p - 1]) == secret
    members = tuple(Share(i, int(t[i - 1]), "member") for i in spec.members)
    public = tuple(Share(i, int(t[i - 1]), "public") for i in spec.frozen)
    del u, t
    return Dealing(code_digest(spec), p, members, public)


def _share_map(spec: CodeSpec, shares: Iterable[Share], p: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for s in shares:
        if s.position in out:
            raise ArgumentError(f"duplicate share for position {s.position}")
        if s.position == p:
            raise ArgumentError(f"share at the secret position {p} is not allowed")
        if not 1 <= s.position <= spec.N:
            raise ArgumentError(f"share position {s.position} out of range 1..{spec.N}")
        if s.bit not in (0, 1):
            raise ArgumentError(f"share bit must be 0 or 1, got {s.bit!r}")
        out[s.position] = int(s.bit)
    return out


def reconstruct(spec: CodeSpec, shares: Iterable[Share], mode: str = "full",
                public_values: Iterable[Share] = (), digest: str | None = None) -> int:
    """Recover the secret bit from ``shares``.

    In full mode exactly the supplied shares are used. In effective mode the
    public values (given in ``shares`` or ``public_values``) must cover every
    frozen position and are used as well. Raises :class:`UnqualifiedError`
    when the available positions do not determine the secret and
    :class:`IntegrityError` when the bits fit no codeword.
    """
    _check_mode(mode)
    p = spec.p
    if digest is not None and digest != code_digest(spec):
        raise DigestMismatchError(f"shares were dealt for code {digest}, not {code_digest(spec)}")
    values = _share_map(spec, list(shares), p)
    if mode == "effective":
        for s in public_values:
            if s.position in values and values[s.position] != s.bit:
                raise IntegrityError(f"conflicting values for position {s.position}")
            values[s.position] = int(s.bit)
        missing = [i for i in spec.frozen if i not in values]
        if missing:
            raise ArgumentError(f"effective mode needs public values for positions {missing}")
    members = tuple(sorted(values))
    coeffs = combination(spec, members, mode, p)
    if coeffs is None:
        raise UnqualifiedError(mode, members)
    offset = coset_offset(spec)
    pos = sorted(values)
    received = np.array([values[i] for i in pos], dtype=np.uint8) ^ offset[[i - 1 for i in pos]]
    G_U = generator_submatrix(spec)
    if gf2.solve(G_U[:, [i - 1 for i in pos]], received) is None:
        raise IntegrityError("share values are not consistent with any codeword")
    s = int(offset[p - 1])
    for i in coeffs:
        s ^= values[i] ^ int(offset[i - 1])
    return s


def _as_bits(text: str) -> list[int]:
    if not text:
        raise ArgumentError("secret bit string is empty")
    if any(ch not in "01" for ch in text):
        raise ArgumentError(f"secret must be a string of 0/1, got {text!r}")
    return [int(ch) for ch in text]


def deal_string(spec: CodeSpec, secret_bits: str, rng: np.random.Generator | None = None) -> list[Dealing]:
    """One independent dealing per bit of ``secret_bits``."""
    return [deal(spec, b, rng) for b in _as_bits(secret_bits)]


def reconstruct_string(spec: CodeSpec, shares_per_bit: Iterable[Iterable[Share]], mode: str = "full") -> str:
    """Apply :func:`reconstruct` to each bit's shares and concatenate."""
    shares_per_bit = list(shares_per_bit)
    if not shares_per_bit:
        raise ArgumentError("no dealings to reconstruct")
    out = []
    for shares in shares_per_bit:
        shares = list(shares)
        public = [s for s in shares if s.role == "public"] if mode == "effective" else []
        out.append(str(reconstruct(spec, shares, mode, public)))
    return "".join(out)


class AuditReport(NamedTuple):
    """Posterior counts of the secret for every observable share assignment.

    Row ``j`` of ``assignments`` is one set of bits the coalition could see
    at ``positions``; ``counts[j]`` holds the number of information vectors
    giving that view with s = 0 and with s = 1.
    """

    positions: tuple[int, ...]
    assignments: np.ndarray
    counts: np.ndarray

    @property
    def balanced(self) -> bool:
        """Every assignment is equally consistent with s = 0 and s = 1."""
        return bool(np.all(self.counts[:, 0] == self.counts[:, 1]))

    @property
    def determined(self) -> bool:
        """Every assignment rules out one secret value."""
        return bool(np.all(self.counts.min(axis=1) == 0))

    def table(self) -> dict[tuple[int, ...], tuple[int, int]]:
        """The counts keyed by assignment tuple, in ascending assignment order."""
        return {tuple(int(b) for b in a): (int(c[0]), int(c[1]))
                for a, c in zip(self.assignments, self.counts)}


def security_audit(spec: CodeSpec, members, mode: str = "full", p: int | None = None,
                   max_dimension: int = MAX_AUDIT_DIMENSION) -> AuditReport:
    """Brute force over all 2**k information vectors.

    For each share assignment the coalition could observe (its own shares,
    plus public values in effective mode) count the vectors ``u`` giving
    s = 0 and s = 1.
    """
    _check_mode(mode)
    p = _check_p(spec, p)
    if spec.k > max_dimension:
        raise SizeError(f"k = {spec.k} exceeds audit bound {max_dimension}")
    members = coalition(spec, members, p, allow_empty=True)
    pos = available_positions(spec, members, mode, p)
    G_U = generator_submatrix(spec)
    offset = coset_offset(spec)
    cols = [i - 1 for i in pos] + [p - 1]
    words = gf2.span(G_U[:, cols]) ^ offset[cols]
    views, secret = words[:, :-1], words[:, -1].astype(np.int64)
    if len(pos) < 63:
        # one integer key per view, most significant bit = first position
        keys = views.astype(np.int64) @ (1 << np.arange(len(pos) - 1, -1, -1, dtype=np.int64))
        uniq, inverse = np.unique(keys, return_inverse=True)
        assignments = ((uniq[:, None] >> np.arange(len(pos) - 1, -1, -1)) & 1).astype(np.uint8)
    else:
        assignments, inverse = np.unique(views, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    ones = np.bincount(inverse, weights=secret, minlength=len(assignments)).astype(np.int64)
    totals = np.bincount(inverse, minlength=len(assignments))
    return AuditReport(pos, assignments.reshape(len(assignments), len(pos)),
                       np.stack([totals - ones, ones], axis=1))


# --------------------------------------------------------------------- files


class ShareBlock(NamedTuple):
    code_digest: str
    p: int
    shares: tuple[Share, ...]


def format_shares(digest: str, p: int, shares: Iterable[Share]) -> str:
    lines = [SHARES_MAGIC, f"code_digest = {digest}", f"p = {p}"]
    for s in sorted(shares, key=lambda s: (s.role != "public", s.position)):
        keyword = "public" if s.role == "public" else "share"
        lines.append(f"{keyword} {s.position} {s.bit}")
    return "\n".join(lines) + "\n"


def format_dealing(dealing: Dealing, positions: Iterable[int] | None = None) -> str:
    """Shares file text for a whole dealing, or only the given positions."""
    shares = dealing.shares if positions is None else dealing.select(positions)
    return format_shares(dealing.code_digest, dealing.p, shares)


def parse_shares(text: str) -> list[ShareBlock]:
    """Parse one or more concatenated shares blocks."""
    blocks: list[ShareBlock] = []
    header: dict[str, str] = {}
    shares: list[Share] = []

    def flush():
        if "code_digest" not in header or "p" not in header:
            raise FormatError("shares block is missing code_digest or p")
        try:
            p = int(header["p"])
        except ValueError:
            raise FormatError(f"p must be an integer, got {header['p']!r}") from None
        blocks.append(ShareBlock(header["code_digest"], p, tuple(shares)))

    started = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == SHARES_MAGIC:
            if started:
                flush()
            started = True
            header, shares = {}, []
            continue
        if not started:
            raise FormatError(f"missing '{SHARES_MAGIC}' header")
        if "=" in line:
            key, _, value = (x.strip() for x in line.partition("="))
            if key not in ("code_digest", "p") or key in header:
                raise FormatError(f"unexpected header line {line!r}")
            header[key] = value
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("share", "public"):
            raise FormatError(f"malformed share line {line!r}")
        try:
            pos, bit = int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError(f"malformed share line {line!r}") from None
        if bit not in (0, 1):
            raise FormatError(f"share bit must be 0 or 1 in {line!r}")
        shares.append(Share(pos, bit, "public" if parts[0] == "public" else "member"))
    if not started:
        raise FormatError(f"missing '{SHARES_MAGIC}' header")
    flush()
    return blocks


def load_shares(path) -> list[ShareBlock]:
    return parse_shares(Path(path).read_text(encoding="utf-8"))


def merge_blocks(spec: CodeSpec, files: Iterable[list[ShareBlock]]) -> list[list[Share]]:
    """Combine per-file share blocks into one share list per secret bit.

    Every block must carry the digest of ``spec`` and its ``p``; all files
    must hold the same number of blocks.
    """
    files = list(files)
    if not files:
        raise ArgumentError("no shares files given")
    digest = code_digest(spec)
    counts = {len(f) for f in files}
    if len(counts) != 1:
        raise FormatError("shares files hold different numbers of dealings")
    merged: list[list[Share]] = [[] for _ in range(counts.pop())]
    for blocks in files:
        for j, b in enumerate(blocks):
            if b.code_digest != digest:
                raise DigestMismatchError(f"shares were dealt for code {b.code_digest}, not {digest}")
            if b.p != spec.p:
                raise DigestMismatchError(f"shares use p = {b.p}, code has p = {spec.p}")
            seen = {s.position for s in merged[j]}
            merged[j].extend(s for s in b.shares if s.position not in seen)
    return merged
