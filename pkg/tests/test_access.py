import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polarss import gf2
from polarss.access import (
    AccessStructure,
    all_minimal_check,
    combination,
    dictator_analysis,
    enumerate_p_codewords,
    is_qualified,
    is_qualified_dual,
    minimal_access_sets,
    minimal_p_codewords,
    row_coalitions,
    theorem1_count_check,
)
from polarss.channel import BEC, BiAWGN
from polarss.construction import build_code, code_from_information_set, dual_submatrix, generator_submatrix
from polarss.errors import ArgumentError, SizeError

from .conftest import REFERENCE_G8, brute_force_qualified

FANO_LINES = ((1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5), (2, 4, 6), (3, 4, 7), (5, 6, 7))

# Printed row listing of the (32, 16) example, one coalition per H_U row with a 1 at 32.
PRINTED_ROW_COALITIONS = (
    (12, 14, 15, 16, 20, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31),
    (12, 14, 16, 20, 22, 24, 24, 26, 28, 30),
    (12, 15, 16, 20, 23, 24, 27, 28, 31),
    (12, 16, 20, 24, 28),
    (14, 15, 16, 22, 23, 24, 29, 30, 31),
    (14, 16, 22, 24, 30),
    (15, 16, 23, 24, 31),
    (16, 24),
    (12, 14, 15, 16, 25, 27, 28, 29, 30, 31),
    (12, 14, 16, 26, 28, 30),
    (12, 15, 16, 27, 28, 31),
    (14, 15, 16, 29, 30, 31),
    (20, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31),
    (20, 22, 24, 26, 28, 30),
    (20, 23, 24, 27, 28, 31),
    (21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31),
)


def brute_force_minimal(spec, mode, p=None):
    """Minimal qualified coalitions by trying every subset against the u-enumeration oracle."""
    if p is not None and p != spec.p:
        spec = code_from_information_set(spec.channel, spec.n, spec.A, p)
    extra = spec.frozen if mode == "effective" else ()
    pool = [i for i in range(1, spec.N + 1) if i != spec.p and i not in extra]
    found = []
    for size in range(len(pool) + 1):
        for c in itertools.combinations(pool, size):
            if any(set(f) <= set(c) for f in found):
                continue
            if brute_force_qualified(spec, c, extra):
                found.append(c)
    return tuple(sorted(found))


def all_specs(max_n=3):
    for n in range(1, max_n + 1):
        for k in range(1, (1 << n) + 1):
            yield build_code(BEC(0.5), n, k)


# ----------------------------------------------------------- qualification


def test_small_code_column_span(ex2):
    assert is_qualified(ex2, [2, 4, 6], "full")
    assert not is_qualified(ex2, [4, 6], "full")
    assert is_qualified(ex2, [4, 6], "effective")
    assert combination(ex2, [2, 4, 6]) == (2, 4, 6)
    # everything but p sees the whole column space
    assert is_qualified(ex2, [1, 2, 3, 4, 5, 6, 7])


def test_combination_really_sums_to_g_p(ex3):
    G_U = generator_submatrix(ex3)
    for members in ([16, 24], [12, 16, 20, 24, 28], [20, 22, 24, 26, 28, 30]):
        coeffs = combination(ex3, members, "effective")
        assert coeffs is not None
        total = np.bitwise_xor.reduce(G_U[:, [i - 1 for i in coeffs]], axis=1)
        assert np.array_equal(total, G_U[:, 31])


def test_argument_checks(ex2):
    with pytest.raises(ArgumentError):
        is_qualified(ex2, [8, 4])
    with pytest.raises(ArgumentError):
        is_qualified(ex2, [4, 4])
    with pytest.raises(ArgumentError):
        is_qualified(ex2, [9])
    with pytest.raises(ArgumentError):
        is_qualified(ex2, [4], mode="partial")


def test_column_span_and_dual_agree_exhaustively():
    for spec in all_specs(3):
        for mode in ("full", "effective"):
            pool = [i for i in range(1, spec.N + 1) if i != spec.p]
            for r in range(len(pool) + 1):
                for c in itertools.combinations(pool, r):
                    q = is_qualified(spec, c, mode)
                    assert q == is_qualified_dual(spec, c, mode)
                    extra = spec.frozen if mode == "effective" else ()
                    assert q == brute_force_qualified(spec, c, extra)


@pytest.mark.parametrize("k", [3, 6, 8, 11, 14])
def test_column_span_and_dual_agree_n4(k):
    spec = build_code(BiAWGN(0.7), 4, k)
    pool = [i for i in range(1, 17) if i != spec.p]
    for mode in ("full", "effective"):
        for r in range(len(pool) + 1):
            for c in itertools.combinations(pool, r):
                assert is_qualified(spec, c, mode) == is_qualified_dual(spec, c, mode)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_supersets_of_qualified_sets_are_qualified(data):
    n = data.draw(st.integers(2, 4))
    k = data.draw(st.integers(1, 1 << n))
    spec = build_code(BEC(0.4), n, k)
    pool = [i for i in range(1, spec.N + 1) if i != spec.p]
    c = data.draw(st.sets(st.sampled_from(pool)))
    more = data.draw(st.sets(st.sampled_from(pool)))
    mode = data.draw(st.sampled_from(("full", "effective")))
    if is_qualified(spec, c, mode):
        assert is_qualified(spec, c | more, mode)


# ----------------------------------------------------------- p-codewords


def test_p_codewords_of_small_code(ex2):
    words = enumerate_p_codewords(ex2)
    assert words.shape == (8, 8)
    assert words[:, 7].all()
    assert [0, 1, 0, 1, 0, 1, 0, 1] in words.tolist()
    # brute force over the whole dual code
    dual = gf2.span(dual_submatrix(ex2))
    want = sorted(map(tuple, dual[dual[:, 7] == 1].tolist()))
    assert sorted(map(tuple, words.tolist())) == want


def test_no_p_codeword_when_unit_vector_is_a_codeword():
    # e_1 is row 1 of G_N; with 1 in A no dual word touches position 1
    spec = code_from_information_set(BEC(0.5), 3, (1, 4, 6, 7), 1)
    assert enumerate_p_codewords(spec).shape == (0, 8)
    assert minimal_access_sets(spec).minimal_sets == ()
    assert not is_qualified(spec, [2, 3, 4, 5, 6, 7, 8])
    with pytest.raises(ArgumentError):
        dictator_analysis(minimal_access_sets(spec))


def test_enumeration_bound():
    spec = build_code(BEC(0.5), 5, 4)
    with pytest.raises(SizeError):
        enumerate_p_codewords(spec)
    with pytest.raises(SizeError):
        minimal_access_sets(spec, max_dual_dimension=24)


# ------------------------------------------------------- minimal access sets


def test_small_code_minimal_sets_derived(ex2):
    # seven lines of the Fano plane, confirmed by subset enumeration
    assert minimal_access_sets(ex2, "full").minimal_sets == FANO_LINES
    assert brute_force_minimal(ex2, "full") == FANO_LINES
    # col1 + col2 + col7 of G_U is g_8, so {1,2,7} is qualified
    G_U = generator_submatrix(ex2)
    assert np.array_equal(G_U[:, 0] ^ G_U[:, 1] ^ G_U[:, 6], G_U[:, 7])
    # the public values already fix the secret: the empty coalition suffices
    assert minimal_access_sets(ex2, "effective").minimal_sets == ((),)
    assert brute_force_minimal(ex2, "effective") == ((),)


def test_small_code_minimal_sets_as_printed(ex2):
    # Stated listing. These are H_U-row supports; {1..7} contains the
    # qualified {1,2,7}, so it is not minimal and this assertion fails.
    assert minimal_access_sets(ex2, "full").minimal_sets == (
        (1, 2, 3, 4, 5, 6, 7), (2, 4, 6), (3, 4, 7), (5, 6, 7))
    assert minimal_access_sets(ex2, "effective").minimal_sets == ((4, 6), (4, 7), (6, 7))


def test_small_code_row_listing(ex2):
    assert row_coalitions(ex2, "full") == ((1, 2, 3, 4, 5, 6, 7), (2, 4, 6), (3, 4, 7), (5, 6, 7))
    assert row_coalitions(ex2, "effective") == ((4, 6), (4, 7), (6, 7))
    for c in row_coalitions(ex2, "full"):
        assert is_qualified(ex2, c, "full")


@pytest.mark.parametrize("mode", ["full", "effective"])
def test_minimal_sets_match_brute_force(mode):
    for spec in all_specs(3):
        for p in spec.A:
            got = minimal_access_sets(spec, mode, p).minimal_sets
            assert got == brute_force_minimal(spec, mode, p)


@pytest.mark.parametrize("k", [2, 5, 9, 12])
def test_every_proper_subset_of_a_minimal_set_fails(k):
    spec = build_code(BiAWGN(0.9), 4, k)
    for mode in ("full", "effective"):
        structure = minimal_access_sets(spec, mode)
        for s in structure.minimal_sets:
            assert is_qualified(spec, s, mode)
            if len(s) <= 12:
                for r in range(len(s)):
                    for sub in itertools.combinations(s, r):
                        assert not is_qualified(spec, sub, mode)
        assert all(not set(structure.minimal_sets[i]) & {spec.p} for i in range(len(structure.minimal_sets)))
        if mode == "effective":
            assert not any(set(s) & set(spec.frozen) for s in structure.minimal_sets)


def test_structure_helpers():
    s = AccessStructure(8, "full", ((2, 4, 6), (3, 4, 7)))
    assert s.is_qualified([1, 2, 4, 6]) and not s.is_qualified([2, 4])
    assert s.membership_counts() == {2: 1, 3: 1, 4: 2, 6: 1, 7: 1}


# -------------------------------------------------------------- dictators


def test_dictators(ex2):
    assert dictator_analysis(AccessStructure(8, "full", ((2, 5, 9),))) == {2, 5, 9}
    assert dictator_analysis(minimal_access_sets(ex2, "full")) == frozenset()
    assert dictator_analysis(AccessStructure(8, "effective", ((4, 6), (4, 7), (6, 7)))) == frozenset()


def test_p4_has_no_dictator_derived(ex2):
    full = minimal_access_sets(ex2, "full", p=4)
    assert full.minimal_sets == ((1, 2, 3), (1, 5, 8), (1, 6, 7), (2, 5, 7), (2, 6, 8), (3, 5, 6), (3, 7, 8))
    assert full.minimal_sets == brute_force_minimal(ex2, "full", 4)
    assert dictator_analysis(full) == frozenset()
    assert minimal_access_sets(ex2, "effective", p=4).minimal_sets == ((),)


def test_p4_dictator_as_stated(ex2):
    # Stated: P8 is a dictator when p = 4 (effective mode). The enumeration
    # above shows the empty coalition is already qualified, so it fails.
    assert 8 in dictator_analysis(minimal_access_sets(ex2, "effective", p=4))


# ------------------------------------------------------------- theorems


def brute_minimal_flags(gen):
    words = [w for w in gf2.span(gen).tolist() if any(w)]
    words = list({tuple(w) for w in words})
    def minimal(a):
        return not any(b != a and all(x >= y for x, y in zip(a, b)) for b in words)
    return words, [minimal(w) for w in words]


def test_all_minimal_examples():
    r = all_minimal_check(REFERENCE_G8[[3, 5, 6]])
    assert r.sufficient_by_weight and r.exact and (r.w_min, r.w_max) == (4, 4)
    r = all_minimal_check(REFERENCE_G8[[3, 5, 6, 7]])
    assert not r.sufficient_by_weight and (r.w_min, r.w_max) == (4, 8)
    # 1111 1111 covers 1111 0000, so not every codeword is minimal
    assert not r.exact
    r = all_minimal_check(REFERENCE_G8[[5]])
    assert r.sufficient_by_weight and r.exact


def test_weight_condition_never_contradicts_brute_force():
    for mask in range(1, 256):
        rows = [i for i in range(8) if mask >> i & 1]
        gen = REFERENCE_G8[rows]
        report = all_minimal_check(gen)
        words, flags = brute_minimal_flags(gen)
        assert report.exact == all(flags)
        if report.sufficient_by_weight:
            assert report.exact


def test_rank_criterion_agrees_with_pairwise():
    # 2^13 - 1 codewords exceeds the pairwise limit
    gen = gf2.polar_generator(4)[3:]
    report = all_minimal_check(gen)
    assert report.exact is False
    assert all_minimal_check(np.eye(13, dtype=np.uint8)).exact is False
    # first-order Reed-Muller style code: all nonzero words minimal
    rm = gf2.polar_generator(4)[[15, 14, 13, 11, 7]][:, ::-1]
    assert all_minimal_check(rm).exact == all(brute_minimal_flags(rm)[1])


def test_theorem_1_counts():
    gen = REFERENCE_G8[[3, 5, 6]]
    for p in range(1, 9):
        if gen[:, p - 1].any():
            assert theorem1_count_check(gen, p)
            assert len(minimal_p_codewords(gen, p)) == 4
    assert theorem1_count_check(np.array([[0, 1, 1, 0, 1]]), 2)
    with pytest.raises(ArgumentError):
        theorem1_count_check(np.eye(3, dtype=np.uint8), 2)
    with pytest.raises(ArgumentError):
        theorem1_count_check(gen, 8 + 1)
    with pytest.raises(ArgumentError):
        theorem1_count_check(np.array([[1, 0, 1]]), 2)


# ---------------------------------------------------- (32, 16) row listing


def test_printed_rows_against_computed_listing(ex3):
    rows = row_coalitions(ex3, "effective", reduce=False)
    assert len(rows) == 16
    same = [i for i, (a, b) in enumerate(zip(rows, PRINTED_ROW_COALITIONS)) if a == b]
    # rows 2, 9 and 16 differ as printed (duplicate P24, missing P26, extra P21 and P25-P28)
    assert [i + 1 for i in range(16) if i not in same] == [2, 9, 16]
    assert set(PRINTED_ROW_COALITIONS[1]) == set(rows[1])
    assert set(rows[8]) - set(PRINTED_ROW_COALITIONS[8]) == {26}
    assert set(rows[15]) < set(PRINTED_ROW_COALITIONS[15])


def test_printed_row_coalitions_qualify(ex3):
    for c in PRINTED_ROW_COALITIONS:
        c = sorted(set(c))
        assert is_qualified(ex3, c, "effective")
        assert is_qualified_dual(ex3, c, "effective")
        assert brute_force_qualified(ex3, c, ex3.frozen)
    # without the public values the bare row-8 pair is not enough
    assert not is_qualified(ex3, [16, 24], "full")
    assert is_qualified(ex3, [], "effective")
