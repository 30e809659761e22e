import csv
import io
import itertools
import math

import numpy as np
import pytest
from scipy import stats

from polarss.access import available_positions, is_qualified
from polarss.channel import BEC, BSC
from polarss.construction import code_from_information_set
from polarss.errors import ArgumentError
from polarss.transmission import mix, simulate


def with_channel(spec, channel):
    return code_from_information_set(channel, spec.n, spec.A, spec.p)


def survival_oracle(spec, members, mode, eps):
    """Exact success probability on a BEC: sum over erasure patterns of the
    positions the coalition reads, counting the qualified survivor sets."""
    pos = available_positions(spec, members, mode)
    total = 0.0
    for alive in itertools.product((0, 1), repeat=len(pos)):
        kept = [i for i, a in zip(pos, alive) if a]
        prob = math.prod((1 - eps) if a else eps for a in alive)
        if is_qualified(spec, kept, "full"):
            total += prob
    return total


def test_splitmix_reference_outputs():
    # first two outputs of SplitMix64 seeded with 0
    assert mix(0, 0) == 0xE220A8397B1DCDAF
    assert mix(0, 1) == 0x6E789E6AA1B965F4
    assert mix(2**64 - 1, 0) < 2**64


@pytest.mark.parametrize("mode", ["full", "effective"])
def test_noiseless_channel_matches_qualification(ex2, mode):
    spec = with_channel(ex2, BEC(0.0))
    coalitions = [(4, 6), (2, 4, 6), (1, 2, 7), (4,), (1, 3, 5), (1, 2, 3, 4, 5, 6, 7)]
    report = simulate(spec, coalitions, 300, seed=1, mode=mode)
    for c in coalitions:
        assert report.coalition_success[c] == float(is_qualified(spec, c, mode))
    assert set(report.per_position_failure) == {0.0}
    zero = simulate(with_channel(ex2, BSC(0.0)), coalitions, 200, seed=2, mode=mode)
    assert zero.coalition_success == report.coalition_success


@pytest.mark.parametrize("members,mode", [((4, 6), "effective"), ((1, 2, 7), "full"),
                                          ((1, 2, 3, 4, 5, 6, 7), "full"), ((4,), "effective")])
def test_bec_success_against_survival_oracle(ex2, members, mode):
    trials = 20_000
    report = simulate(ex2, [members], trials, seed=3, mode=mode)
    want = survival_oracle(ex2, members, mode, 0.5)
    assert abs(report.coalition_success[members] - want) <= 4 * math.sqrt(want * (1 - want) / trials) + 1e-12


def test_bec_erasure_rates(ex2):
    r = simulate(ex2, [], 20_000, seed=4)
    rates = np.array(r.per_position_failure)
    assert rates[7] == 0.0  # the secret position is never sent
    assert np.all(np.abs(np.delete(rates, 7) - 0.5) < 0.015)


def test_awgn_hard_decision_rate(ex3):
    r = simulate(ex3, [], 20_000, seed=5)
    q = stats.norm.sf(1 / 0.9)
    rates = np.delete(np.array(r.per_position_failure), 31)
    assert np.all(np.abs(rates - q) < 4 * math.sqrt(q * (1 - q) / 20_000))


def test_bsc_received_bits_are_used(ex2):
    spec = with_channel(ex2, BSC(0.05))
    r = simulate(spec, [(1, 2, 7)], 20_000, seed=6)
    assert np.all(np.abs(np.delete(r.per_position_failure, 7) - 0.05) < 0.008)
    # three clean shares are needed; a flipped share gives a wrong answer
    assert r.coalition_success[(1, 2, 7)] == pytest.approx(0.95**3, abs=0.012)


def test_redundant_shares_catch_flips(ex2):
    # all seven shares over-determine the codeword, so single flips are caught
    spec = with_channel(ex2, BSC(0.05))
    c = (1, 2, 3, 4, 5, 6, 7)
    r = simulate(spec, [c], 20_000, seed=7)
    assert r.coalition_success[c] == pytest.approx(0.95**7, abs=0.012)


def test_worker_count_does_not_matter(ex2):
    runs = [simulate(ex2, [(4, 6), (2, 4, 6)], 3001, seed=99, mode="effective", workers=w)
            for w in (1, 2, 3, 8)]
    assert all(r == runs[0] for r in runs)
    assert simulate(ex2, [(4, 6)], 3001, seed=98, mode="effective") != runs[0]


def test_success_non_increasing_in_erasure_probability(ex2):
    rates = []
    for eps in (0.1, 0.3, 0.5, 0.7, 0.9):
        spec = with_channel(ex2, BEC(eps))
        rates.append(simulate(spec, [(4, 6)], 20_000, seed=8, mode="effective").coalition_success[(4, 6)])
    assert all(b <= a + 0.01 for a, b in zip(rates, rates[1:]))


def test_csv_layout(ex2):
    text = simulate(ex2, [(4, 6)], 100, seed=0, mode="effective").to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["position", "failure_rate"]
    assert [r[0] for r in rows[1:9]] == [str(i) for i in range(1, 9)]
    assert rows[9] == ["coalition", "success_rate"]
    assert rows[10][0] == "P4,P6"
    assert '"P4,P6"' in text
    assert all("." in r[1] for r in rows[1:] if r[1][0].isdigit())


def test_argument_errors(ex2):
    with pytest.raises(ArgumentError):
        simulate(ex2, [], 0, seed=0)
    with pytest.raises(ArgumentError):
        simulate(ex2, [], 10, seed=0, workers=0)
    with pytest.raises(ArgumentError):
        simulate(ex2, [(8,)], 10, seed=0)
    with pytest.raises(ArgumentError):
        simulate(ex2, [], 10, seed=0, mode="half")
