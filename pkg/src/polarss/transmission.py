"""Monte-Carlo delivery of shares over the construction channel.

Each trial deals a uniformly random secret bit, sends every share bit (all
positions except ``p``) through the code's channel, and takes hard
decisions: BEC erasures are lost shares, BSC outputs are used as received,
BI-AWGN outputs are sliced by sign. No error-correcting decoding is applied.

A coalition succeeds in a trial when the positions it can still read (its
own shares, plus public frozen-position values in effective mode, minus
erasures) form a qualified set, the received bits fit some codeword, and
the combination returns the true secret.

Trial ``i`` draws from ``numpy.random.default_rng(mix(seed, i))`` where
``mix`` is the 64-bit SplitMix finalizer, so results do not depend on how
trials are spread over workers.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import gf2
from .access import _check_mode, available_positions, coalition, combination
from .channel import apply_noise, hard_decisions, noise_draws
from .construction import CodeSpec, generator_submatrix
from .errors import ArgumentError
from .sharing import coset_offset

_MASK64 = (1 << 64) - 1


def mix(seed: int, i: int) -> int:
    """SplitMix64 finalizer applied to ``seed + (i + 1) * golden_gamma``."""
    z = (int(seed) + (int(i) + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SimReport:
    trials: int
    seed: int
    mode: str
    per_position_failure: tuple[float, ...]
    coalition_success: dict[tuple[int, ...], float]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["position", "failure_rate"])
        for i, r in enumerate(self.per_position_failure, start=1):
            w.writerow([i, f"{r:.6f}"])
        w.writerow(["coalition", "success_rate"])
        for c, r in self.coalition_success.items():
            w.writerow([",".join(f"P{i}" for i in c), f"{r:.6f}"])
        return buf.getvalue()


def _run_trials(spec: CodeSpec, start: int, stop: int, seed: int):
    count = stop - start
    n_sent = spec.N - 1
    draws = np.zeros((count, spec.k + 1), dtype=np.uint8)
    noise = np.zeros((count, n_sent))
    for j, i in enumerate(range(start, stop)):
        rng = np.random.default_rng(mix(seed, i))
        draws[j] = rng.integers(0, 2, size=spec.k + 1, dtype=np.uint8)
        noise[j] = noise_draws(spec.channel, n_sent, rng)

    G_U = generator_submatrix(spec)
    offset = coset_offset(spec)
    p = spec.p
    g_p = G_U[:, p - 1].astype(np.int64)
    # same rule as sample_information_vector, applied to all trials at once
    secrets_ = draws[:, 0]
    u = draws[:, 1:].astype(np.int64)
    pivot = int(np.flatnonzero(g_p)[0])
    u[:, pivot] = 0
    u[:, pivot] = (secrets_ ^ offset[p - 1] ^ (u @ g_p)) & 1
    t = ((u @ G_U.astype(np.int64)) & 1).astype(np.uint8) ^ offset
    sent = np.delete(t, p - 1, axis=1)
    values, erased = apply_noise(spec.channel, sent, noise)
    return secrets_, sent, hard_decisions(spec.channel, values), erased


def _success(spec: CodeSpec, positions, secrets_, received, erased, col_of) -> np.ndarray:
    """Per-trial success flags for one coalition (positions already include public ones)."""
    G_U = generator_submatrix(spec)
    offset = coset_offset(spec)
    cols = np.array([col_of[i] for i in positions], dtype=int)
    ok = np.zeros(secrets_.size, dtype=bool)
    if cols.size == 0:
        patterns = np.zeros((secrets_.size, 0), dtype=bool)
    else:
        patterns = erased[:, cols]
    keys, inverse = np.unique(patterns, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    for g, key in enumerate(keys):
        rows = np.flatnonzero(inverse == g)
        alive = [pos for pos, lost in zip(positions, key) if not lost]
        coeffs = combination(spec, alive, "full")
        if coeffs is None or not alive:
            continue
        alive_cols = [col_of[i] for i in alive]
        r = received[np.ix_(rows, alive_cols)] ^ offset[[i - 1 for i in alive]]
        parity = gf2.nullspace(G_U[:, [i - 1 for i in alive]])
        consistent = ~((r.astype(np.int64) @ parity.T.astype(np.int64)) & 1).any(axis=1) \
            if parity.size else np.ones(rows.size, dtype=bool)
        est = np.full(rows.size, offset[spec.p - 1], dtype=np.uint8)
        for i in coeffs:
            est ^= received[rows, col_of[i]] ^ offset[i - 1]
        ok[rows] = consistent & (est == secrets_[rows])
    return ok


def simulate(spec: CodeSpec, coalitions, trials: int, seed: int, mode: str = "full",
             workers: int = 1) -> SimReport:
    """Estimate per-position failure rates and coalition success rates."""
    _check_mode(mode)
    if trials < 1:
        raise ArgumentError(f"trials must be at least 1, got {trials}")
    if workers < 1:
        raise ArgumentError(f"workers must be at least 1, got {workers}")
    coalitions = [coalition(spec, c) for c in coalitions]
    bounds = np.linspace(0, trials, min(workers, trials) + 1).astype(int)
    chunks = list(zip(bounds[:-1], bounds[1:]))
    if len(chunks) == 1:
        parts = [_run_trials(spec, 0, trials, seed)]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(lambda c: _run_trials(spec, int(c[0]), int(c[1]), seed), chunks))
    secrets_, sent, received, erased = (np.concatenate(x) for x in zip(*parts))

    failures = erased | (~erased & (received != sent))
    per_pos = np.zeros(spec.N)
    sent_positions = [i for i in range(1, spec.N + 1) if i != spec.p]
    per_pos[[i - 1 for i in sent_positions]] = failures.mean(axis=0)
    col_of = {pos: c for c, pos in enumerate(sent_positions)}

    success = {}
    for c in coalitions:
        positions = available_positions(spec, c, mode)
        flags = _success(spec, positions, secrets_, received, erased, col_of)
        success[c] = float(flags.mean())
    return SimReport(trials, int(seed), mode, tuple(float(x) for x in per_pos), success)
