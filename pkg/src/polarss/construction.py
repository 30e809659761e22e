"""Polar code construction.

Reliability scores per synthesized channel (lower is better), choice of the
information set ``A``, the generator/dual submatrices ``G_U`` and ``H_U``,
coset and systematic encoders, and the versioned code file format.

Indices exposed here are 1-based. Natural Kronecker order is used
throughout: there is no bit-reversal permutation.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import ndtr

from . import gf2
from .channel import ChannelModel, bhattacharyya
from .errors import ArgumentError, ConfigurationError, DomainError, FormatError, ShapeError

CODE_MAGIC = "POLARSS-CODE v1"

# Gaussian-approximation constants for phi(x).
_GA_ALPHA = -0.4527
_GA_BETA = 0.0218
_GA_GAMMA = 0.86
_GA_SWITCH = 10.0
_GA_TOL = 1e-9


def _exponent(N: int) -> int:
    N = int(N)
    if N < 1 or N & (N - 1):
        raise ShapeError(f"block length must be a power of two, got {N}")
    return N.bit_length() - 1


def _evolve(root, N: int, minus, plus) -> np.ndarray:
    # MSB of i-1 is applied first: appending a bit maps index j -> 2j + bit
    n = _exponent(N)
    vals = np.array([root], dtype=float)
    for _ in range(n):
        nxt = np.empty(2 * vals.size)
        nxt[0::2] = minus(vals)
        nxt[1::2] = plus(vals)
        vals = nxt
    return vals


def bec_reliabilities(eps: float, N: int) -> np.ndarray:
    """Exact Bhattacharyya parameters Z(W_N^(i)) of BEC(eps), i = 1..N.

    Uses z- = 2z - z^2 and z+ = z^2 along the binary expansion of i-1,
    most significant bit first.
    """
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"erasure probability must lie in [0, 1], got {eps}")
    return _evolve(float(eps), N, lambda z: 2.0 * z - z * z, lambda z: z * z)


def _log_phi(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < _GA_SWITCH
    xs = x[small]
    out[small] = _GA_ALPHA * np.power(xs, _GA_GAMMA) + _GA_BETA
    xl = x[~small]
    out[~small] = 0.5 * np.log(np.pi / xl) - xl / 4.0 + np.log1p(-10.0 / (7.0 * xl))
    return out


def ga_phi(x) -> np.ndarray:
    """The Gaussian-approximation function phi(x) for x > 0."""
    return np.exp(_log_phi(x))


def _ga_minus(m: np.ndarray) -> np.ndarray:
    # phi^-1(1 - (1 - phi(m))^2), solved in the log domain so that tiny
    # phi values do not underflow; 1 - (1-a)^2 == a (2 - a)
    log_a = _log_phi(m)
    target = log_a + np.log(2.0 - np.exp(log_a))
    lo = np.zeros_like(m)
    hi = np.maximum(2.0 * m, 1.0)
    while True:
        short = _log_phi(hi) > target
        if not short.any():
            break
        hi[short] *= 2.0
    while np.max(hi - lo) > _GA_TOL:
        mid = 0.5 * (lo + hi)
        above = _log_phi(mid) > target
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return 0.5 * (lo + hi)


def ga_mean_llrs(sigma: float, N: int) -> np.ndarray:
    """Mean LLR of each synthesized channel under the Gaussian approximation."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    return _evolve(2.0 / sigma**2, N, _ga_minus, lambda m: 2.0 * m)


def awgn_reliabilities(sigma: float, N: int) -> np.ndarray:
    """Estimated bit error probability Q(sqrt(m/2)) per synthesized channel."""
    m = ga_mean_llrs(sigma, N)
    return ndtr(-np.sqrt(m / 2.0))


def select_information_set(reliability, k: int) -> tuple[int, ...]:
    """The k indices with the smallest scores, ties toward the smaller index."""
    rel = np.asarray(reliability, dtype=float)
    if not 1 <= k <= rel.size:
        raise ArgumentError(f"k must lie in [1, {rel.size}], got {k}")
    order = np.argsort(rel, kind="stable")[:k]
    return tuple(sorted(int(i) + 1 for i in order))


def reliabilities(channel: ChannelModel, N: int) -> np.ndarray:
    """Per-index scores for any supported channel.

    BEC is exact. BSC runs the same recursion seeded with Z(BSC), which gives
    the usual Bhattacharyya upper bounds. BI-AWGN uses the Gaussian
    approximation.
    """
    if channel.kind == "BiAWGN":
        return awgn_reliabilities(channel.param, N)
    if channel.kind == "BSC":
        return bec_reliabilities(bhattacharyya(channel), N)
    return bec_reliabilities(channel.param, N)


@dataclass(frozen=True)
class CodeSpec:
    """A constructed polar code together with the secret position ``p``."""

    channel: ChannelModel
    n: int
    k: int
    A: tuple[int, ...]
    p: int
    reliability: tuple[float, ...]
    frozen_values: tuple[int, ...] = field(default=())

    def __post_init__(self):
        N = 1 << self.n
        A = tuple(int(i) for i in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "reliability", tuple(float(r) for r in self.reliability))
        fv = tuple(int(b) for b in self.frozen_values) or (0,) * (N - self.k)
        object.__setattr__(self, "frozen_values", fv)
        if list(A) != sorted(set(A)) or len(A) != self.k:
            raise ConfigurationError("A must be strictly ascending with k entries")
        if not all(1 <= i <= N for i in A):
            raise ConfigurationError(f"A entries must lie in [1, {N}]")
        if self.p not in A:
            raise ConfigurationError(f"secret position {self.p} is not in A")
        if len(self.reliability) != N:
            raise ConfigurationError(f"reliability must have {N} entries")
        if len(fv) != N - self.k or any(b not in (0, 1) for b in fv):
            raise ConfigurationError(f"frozen_values must be {N - self.k} bits")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def frozen(self) -> tuple[int, ...]:
        a = set(self.A)
        return tuple(i for i in range(1, self.N + 1) if i not in a)

    @property
    def members(self) -> tuple[int, ...]:
        """Share-holder positions A minus p."""
        return tuple(i for i in self.A if i != self.p)


def _default_p(A, rel) -> int:
    return min(A, key=lambda i: (rel[i - 1], i))


def build_code(channel: ChannelModel, n: int, k: int, p: int | None = None) -> CodeSpec:
    """Construct the polar code of length 2**n and dimension k for ``channel``.

    ``p`` defaults to the most reliable index of A.
    """
    N = 1 << int(n)
    if not 1 <= k <= N:
        raise ArgumentError(f"k must lie in [1, {N}], got {k}")
    rel = reliabilities(channel, N)
    A = select_information_set(rel, k)
    if p is None:
        p = _default_p(A, rel)
    elif p not in A:
        raise ConfigurationError(f"requested secret position {p} is not in A = {A}")
    return CodeSpec(channel, int(n), int(k), A, int(p), tuple(rel))


def code_from_information_set(channel: ChannelModel, n: int, A, p: int | None = None) -> CodeSpec:
    """CodeSpec with an externally chosen information set (reliabilities still computed)."""
    N = 1 << int(n)
    rel = reliabilities(channel, N)
    A = tuple(sorted(int(i) for i in A))
    if p is None:
        p = _default_p(A, rel)
    return CodeSpec(channel, int(n), len(A), A, int(p), tuple(rel))


def _rows(m: np.ndarray, idx) -> np.ndarray:
    return m[[i - 1 for i in idx]]


def generator_submatrix(spec: CodeSpec) -> np.ndarray:
    """``G_U``: rows of G_N at A, ascending."""
    return _rows(gf2.polar_generator(spec.n), spec.A)


def dual_submatrix(spec: CodeSpec) -> np.ndarray:
    """``H_U``: rows of H_N at the frozen positions, ascending."""
    if spec.k == spec.N:
        return np.zeros((0, spec.N), dtype=np.uint8)
    return _rows(gf2.dual_generator(spec.n), spec.frozen)


def is_orthogonal(gen, dual) -> bool:
    """True iff gen @ dual.T == 0 over GF(2)."""
    gen = np.atleast_2d(gen)
    dual = np.atleast_2d(dual)
    if dual.shape[0] == 0:
        return True
    return not gf2.matmul(gen, dual.T).any()


def encode(spec: CodeSpec, u_A) -> np.ndarray:
    """Coset encoder x = u_A G_N(A) xor u_{A^c} G_N(A^c)."""
    u_A = gf2.as_bitvector(u_A)
    if u_A.size != spec.k:
        raise ShapeError(f"expected {spec.k} information bits, got {u_A.size}")
    x = gf2.matmul(u_A, generator_submatrix(spec))
    if any(spec.frozen_values):
        G = gf2.polar_generator(spec.n)
        x ^= gf2.matmul(np.array(spec.frozen_values, dtype=np.uint8), _rows(G, spec.frozen))
    return x


def systematic_encode(spec: CodeSpec, x_U) -> np.ndarray:
    """Codeword of the linear code (zero frozen values) whose A-coordinates are ``x_U``.

    Solves x_F H_U(:, F)^T = x_U H_U(:, A)^T for the frozen coordinates.
    """
    x_U = gf2.as_bitvector(x_U)
    if x_U.size != spec.k:
        raise ShapeError(f"expected {spec.k} systematic bits, got {x_U.size}")
    x = np.zeros(spec.N, dtype=np.uint8)
    a_idx = [i - 1 for i in spec.A]
    x[a_idx] = x_U
    if spec.k == spec.N:
        return x
    f_idx = [i - 1 for i in spec.frozen]
    H_U = dual_submatrix(spec)
    rhs = gf2.matmul(x_U, H_U[:, a_idx].T)
    if not rhs.any():
        return x
    x_F = gf2.solve(H_U[:, f_idx].T, rhs)
    if x_F is None:  # G_N(A, A) is unit lower-triangular, so this cannot happen
        raise ConfigurationError("systematic system is singular")
    x[f_idx] = x_F
    return x


def column_weight(j: int, N: int) -> int:
    """Weight of column j of G_N: 2 ** (number of zero bits in the n-bit expansion of j-1)."""
    n = _exponent(N)
    if not 1 <= j <= N:
        raise ArgumentError(f"column index must lie in [1, {N}], got {j}")
    return 1 << (n - bin(j - 1).count("1"))


def row_weight(i: int, N: int) -> int:
    """Weight of row i of G_N: 2 ** popcount(i-1)."""
    _exponent(N)
    if not 1 <= i <= N:
        raise ArgumentError(f"row index must lie in [1, {N}], got {i}")
    return 1 << bin(i - 1).count("1")


def select_equal_weight_rows(spec: CodeSpec) -> tuple[int, ...]:
    """Largest subset of A whose G_N rows share one weight.

    Equal-size weight classes are resolved toward the heavier weight.
    """
    classes: dict[int, list[int]] = defaultdict(list)
    for i in spec.A:
        classes[row_weight(i, spec.N)].append(i)
    w = max(classes, key=lambda w: (len(classes[w]), w))
    return tuple(classes[w])


# --------------------------------------------------------------------- files


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def format_code(spec: CodeSpec) -> str:
    """Canonical text form of a code file."""
    lines = [
        CODE_MAGIC,
        f"channel = {spec.channel}",
        f"n = {spec.n}",
        f"k = {spec.k}",
        "A = " + ",".join(str(i) for i in spec.A),
        f"p = {spec.p}",
        "frozen_values = " + "".join(str(b) for b in spec.frozen_values),
        "reliability = " + ",".join(f"{r:.6f}" for r in spec.reliability),
    ]
    return "\n".join(lines) + "\n"


def code_digest(spec: CodeSpec) -> str:
    """16 hex digit FNV-1a 64 checksum of the canonical code file."""
    return f"{fnv1a64(format_code(spec).encode('utf-8')):016x}"


_CODE_KEYS = ("channel", "n", "k", "A", "p", "frozen_values", "reliability")


def parse_code(text: str) -> CodeSpec:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != CODE_MAGIC:
        raise FormatError(f"missing '{CODE_MAGIC}' header")
    fields: dict[str, str] = {}
    for line in lines[1:]:
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise FormatError(f"malformed line {line!r}")
        if key not in _CODE_KEYS:
            raise FormatError(f"unknown key {key!r}")
        if key in fields:
            raise FormatError(f"duplicate key {key!r}")
        fields[key] = value.strip()
    missing = [k for k in _CODE_KEYS if k not in fields]
    if missing:
        raise FormatError(f"missing keys: {', '.join(missing)}")
    try:
        n = int(fields["n"])
        k = int(fields["k"])
        A = tuple(int(x) for x in fields["A"].split(","))
        p = int(fields["p"])
        fv = tuple(int(ch) for ch in fields["frozen_values"])
        rel = tuple(float(x) for x in fields["reliability"].split(","))
    except ValueError as exc:
        raise FormatError(f"bad value: {exc}") from None
    if not 0 <= n <= gf2.MAX_EXPONENT:
        raise FormatError(f"n out of range: {n}")
    if k == 1 << n and fv:
        raise FormatError("frozen_values must be empty when k = N")
    if k < 1 << n and len(fv) != (1 << n) - k:
        raise FormatError(f"frozen_values must have {(1 << n) - k} bits")
    try:
        return CodeSpec(ChannelModel.parse(fields["channel"]), n, k, A, p, rel, fv)
    except ConfigurationError as exc:
        raise FormatError(str(exc)) from None


def save_code(spec: CodeSpec, path) -> None:
    Path(path).write_text(format_code(spec), encoding="utf-8", newline="\n")


def load_code(path) -> CodeSpec:
    return parse_code(Path(path).read_text(encoding="utf-8"))
