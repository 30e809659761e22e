"""Binary-input symmetric channels: BEC, BSC and BI-AWGN.

A :class:`ChannelModel` supplies the symmetric capacity, the Bhattacharyya
parameter and noisy transmission of bits. Logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, FormatError

ChannelKind = Literal["BEC", "BSC", "BiAWGN"]

_CLI_PREFIX = {"BEC": "bec", "BSC": "bsc", "BiAWGN": "awgn"}
_KIND_FROM_PREFIX = {v: k for k, v in _CLI_PREFIX.items()}

# Gauss-Hermite rule used for the BI-AWGN capacity integral.
_GH_NODES, _GH_WEIGHTS = np.polynomial.hermite.hermgauss(64)


@dataclass(frozen=True)
class ChannelModel:
    """A binary-input memoryless symmetric channel.

    ``param`` is the erasure probability for BEC, the crossover probability
    for BSC and the noise standard deviation for BI-AWGN (BPSK mapping
    0 -> +1, 1 -> -1).
    """

    kind: ChannelKind
    param: float

    def __post_init__(self):
        if self.kind not in _CLI_PREFIX:
            raise DomainError(f"unknown channel kind {self.kind!r}")
        p = float(self.param)
        object.__setattr__(self, "param", p)
        if not math.isfinite(p):
            raise DomainError(f"channel parameter must be finite, got {p}")
        if self.kind == "BEC" and not 0.0 <= p <= 1.0:
            raise DomainError(f"BEC erasure probability must lie in [0, 1], got {p}")
        if self.kind == "BSC" and not 0.0 <= p <= 0.5:
            raise DomainError(f"BSC crossover probability must lie in [0, 1/2], got {p}")
        if self.kind == "BiAWGN" and not p > 0.0:
            raise DomainError(f"BI-AWGN sigma must be positive, got {p}")

    @classmethod
    def parse(cls, text: str) -> "ChannelModel":
        """Parse the ``bec:<eps>``, ``bsc:<delta>``, ``awgn:<sigma>`` syntax."""
        prefix, sep, value = text.strip().partition(":")
        if not sep or prefix.lower() not in _KIND_FROM_PREFIX:
            raise FormatError(f"bad channel {text!r}; expected bec:<e>, bsc:<d> or awgn:<s>")
        try:
            param = float(value)
        except ValueError:
            raise FormatError(f"bad channel parameter in {text!r}") from None
        return cls(_KIND_FROM_PREFIX[prefix.lower()], param)

    def __str__(self) -> str:
        return f"{_CLI_PREFIX[self.kind]}:{self.param!r}"


def BEC(eps: float) -> ChannelModel:
    return ChannelModel("BEC", eps)


def BSC(delta: float) -> ChannelModel:
    return ChannelModel("BSC", delta)


def BiAWGN(sigma: float) -> ChannelModel:
    return ChannelModel("BiAWGN", sigma)


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _awgn_capacity(sigma: float) -> float:
    # I = 1 - E[log2(1 + exp(-2Y/sigma^2))], Y ~ N(1, sigma^2)
    y = 1.0 + sigma * math.sqrt(2.0) * _GH_NODES
    llr = 2.0 * y / sigma**2
    penalty = np.logaddexp(0.0, -llr) / math.log(2.0)
    value = 1.0 - float(np.dot(_GH_WEIGHTS, penalty)) / math.sqrt(math.pi)
    return min(1.0, max(0.0, value))


def capacity(ch: ChannelModel) -> float:
    """Symmetric capacity I(W) in bits per channel use."""
    if ch.kind == "BEC":
        return 1.0 - ch.param
    if ch.kind == "BSC":
        return 1.0 - binary_entropy(ch.param)
    return _awgn_capacity(ch.param)


def bhattacharyya(ch: ChannelModel) -> float:
    """Bhattacharyya parameter Z(W) = sum_y sqrt(W(y|0) W(y|1))."""
    if ch.kind == "BEC":
        return ch.param
    if ch.kind == "BSC":
        d = ch.param
        return 2.0 * math.sqrt(d * (1.0 - d))
    return math.exp(-1.0 / (2.0 * ch.param**2))


@dataclass(frozen=True)
class ReceivedSymbol:
    """Channel output: a bit, an erasure (value ``None``) or a real number."""

    kind: Literal["bit", "erasure", "real"]
    value: int | float | None = None

    def hard_decision(self) -> int | None:
        """Bit estimate, or ``None`` for an erasure."""
        if self.kind == "erasure":
            return None
        if self.kind == "real":
            return 0 if self.value >= 0 else 1
        return int(self.value)


def noise_draws(ch: ChannelModel, size: int, rng: np.random.Generator) -> np.ndarray:
    """Raw randomness for ``size`` channel uses: normals for BI-AWGN, uniforms otherwise."""
    if ch.kind == "BiAWGN":
        return rng.standard_normal(size)
    return rng.random(size)


def apply_noise(ch: ChannelModel, bits, draws):
    """Channel outputs for ``bits`` given draws from :func:`noise_draws`.

    Returns ``(values, erased)``: for BEC/BSC ``values`` are received bits
    (meaningless where ``erased``), for BI-AWGN they are real channel outputs
    and ``erased`` is all False. Works elementwise on arrays of any shape.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    if ch.kind == "BiAWGN":
        return (1.0 - 2.0 * bits) + ch.param * draws, np.zeros(bits.shape, dtype=bool)
    hit = draws < ch.param
    if ch.kind == "BEC":
        return bits.copy(), hit
    return bits ^ hit.astype(np.uint8), np.zeros(bits.shape, dtype=bool)


def transmit_block(ch: ChannelModel, bits, rng: np.random.Generator):
    """Send a 1-D block of bits; one draw per bit. See :func:`apply_noise`."""
    bits = np.asarray(bits, dtype=np.uint8)
    return apply_noise(ch, bits, noise_draws(ch, bits.size, rng))


def hard_decisions(ch: ChannelModel, values) -> np.ndarray:
    """Map outputs of :func:`transmit_block` to bits (AWGN: sign, else identity)."""
    if ch.kind == "BiAWGN":
        return (np.asarray(values) < 0).astype(np.uint8)
    return np.asarray(values, dtype=np.uint8)


def transmit(ch: ChannelModel, bit: int, rng: np.random.Generator) -> ReceivedSymbol:
    """Send one bit through ``ch`` using ``rng``."""
    if bit not in (0, 1):
        raise DomainError(f"bit must be 0 or 1, got {bit!r}")
    values, erased = transmit_block(ch, np.array([bit]), rng)
    if erased[0]:
        return ReceivedSymbol("erasure")
    if ch.kind == "BiAWGN":
        return ReceivedSymbol("real", float(values[0]))
    return ReceivedSymbol("bit", int(values[0]))
