import functools

import numpy as np
import pytest

from polarss import BEC, BiAWGN, build_code, code_from_information_set

# Information set printed for the (32, 16) BI-AWGN example, sigma = 0.9.
REFERENCE_A32 = (12, 14, 15, 16, 20, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32)

# G_8 exactly as printed with the (8, 4) example.
REFERENCE_G8 = np.array([
    [1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 1, 1],
], dtype=np.uint8)


@pytest.fixture(scope="session")
def ex2():
    """(8, 4) code on BEC(1/2) with p = 8."""
    return build_code(BEC(0.5), 3, 4)


@pytest.fixture(scope="session")
def ex3():
    """(32, 16) code with the printed information set and p = 32."""
    return code_from_information_set(BiAWGN(0.9), 5, REFERENCE_A32, 32)


@functools.lru_cache(maxsize=16)
def all_codewords(spec):
    """Every u G_U for u in {0,1}^k, straight from G_N (row c encodes the bits of c)."""
    from polarss.gf2 import polar_generator

    G = polar_generator(spec.n)[[i - 1 for i in spec.A]].astype(np.int64)
    us = (np.arange(1 << spec.k)[:, None] >> np.arange(spec.k)) & 1
    return (us @ G) & 1


def brute_force_qualified(spec, members, extra=()):
    """Oracle: the secret is a function of the shares at members + extra.

    Enumerates every information vector u directly from G_N, with no
    elimination and no dual code.
    """
    words = all_codewords(spec)
    pos = sorted(set(members) | set(extra))
    keys = words[:, [i - 1 for i in pos]] if pos else np.zeros((len(words), 0), dtype=np.int64)
    _, inverse = np.unique(keys, axis=0, return_inverse=True)
    secret = words[:, spec.p - 1]
    inverse = inverse.ravel()
    # functional iff the secret never takes both values on one key
    seen0 = np.zeros(inverse.max() + 1, dtype=bool)
    seen1 = np.zeros_like(seen0)
    seen0[inverse[secret == 0]] = True
    seen1[inverse[secret == 1]] = True
    return not (seen0 & seen1).any()
