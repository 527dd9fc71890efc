from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigmastab import channel as ch
from sigmastab import decoder as dec
from sigmastab.errors import PreconditionError


@pytest.fixture(scope="module")
def tables(code):
    return {n: dec.build_syndrome_table(code(n)) for n in (11, 13)}


def test_params_validation():
    for bad in (-0.1, 1.1, math.nan):
        with pytest.raises(PreconditionError):
            ch.ChannelParams(bad)
    with pytest.raises(PreconditionError):
        ch.ChannelParams(0.1, model="erasure")
    with pytest.raises(PreconditionError):
        ch.ChannelParams(0.1, trials=0)


@pytest.mark.parametrize("model", ch.MODELS)
def test_extreme_probabilities(model):
    rng = np.random.default_rng(0)
    assert not ch.sample_errors(0.0, 7, 2, rng, 100, model).any()
    E = ch.sample_errors(1.0, 7, 2, rng, 100, model)
    hit = (E[:, :7] | E[:, 7:]) != 0
    assert hit.all()


def test_depolarizing_rate_and_split():
    rng = ch.substream(1, 0)
    n, trials, prob = 10, 20_000, 0.06
    E = ch.sample_errors(prob, n, 2, rng, trials)
    a, b = E[:, :n], E[:, n:]
    hits = (a | b).sum()
    N = n * trials
    assert abs(hits / N - prob) <= 3 * math.sqrt(prob * (1 - prob) / N)
    # X, Z and Y each a third of the hits
    for cnt in ((a & ~b).sum(), (~a & b).sum(), (a & b).sum()):
        q = cnt / N
        assert abs(q - prob / 3) <= 4 * math.sqrt(prob / 3 / N)


def test_independent_xz_rate():
    rng = ch.substream(2, 0)
    E = ch.sample_errors(0.1, 8, 2, rng, 20_000, "independent-xz")
    rate = E[:, :8].mean()
    assert abs(rate - 0.1) <= 3 * math.sqrt(0.09 / (8 * 20_000))


def test_odd_p_samples_are_in_range():
    E = ch.sample_errors(0.5, 6, 3, ch.substream(3), 500)
    assert E.min() >= 0 and E.max() <= 2


def test_reproducible_and_worker_independent(tables):
    t = tables[11]
    a = ch.run_qber(t, [0.05, 0.1], trials=20_000, seed=9)
    b = ch.run_qber(t, [0.05, 0.1], trials=20_000, seed=9)
    c = ch.run_qber(t, [0.05, 0.1], trials=20_000, seed=9, workers=2)
    assert a == b == c
    assert ch.run_qber(t, [0.05], trials=20_000, seed=10) != a[:1]


def test_zero_probability_gives_zero_qber(tables):
    for t in tables.values():
        assert ch.run_qber(t, [0.0], trials=5000)[0].errors == 0


def test_qber_grows_with_probability(tables):
    pts = ch.run_qber(tables[13], [0.02, 0.08, 0.16, 0.3], trials=20_000, seed=4)
    for lo, hi in zip(pts, pts[1:]):
        assert hi.qber + 3 * hi.stderr >= lo.qber - 3 * lo.stderr
    assert pts[-1].qber > pts[0].qber


def _exact_block_error(table, n, prob, max_weight):
    """Sum over error patterns up to max_weight; returns (value, tail mass)."""
    total = 0.0
    covered = 0.0
    for w in range(max_weight + 1):
        E = dec.errors_of_weight(n, 2, w)
        pw = (prob / 3) ** w * (1 - prob) ** (n - w)
        total += pw * dec.table_decode(table, E).sum()
        covered += pw * len(E)
    return total, 1.0 - covered


def test_matches_exact_enumeration_at_low_probability(tables):
    prob, trials = 0.03, 100_000
    exact, tail = _exact_block_error(tables[13], 13, prob, 3)
    pt = ch.run_qber(tables[13], [prob], trials=trials, seed=11)[0]
    sd = math.sqrt(exact * (1 - exact) / trials)
    assert exact - 4 * sd <= pt.qber <= exact + tail + 4 * sd


def test_exact_weights_zero_to_two_never_fail(tables):
    # [[13,1]] corrects every weight <= 2 pattern, so QBER = O(prob^3)
    for w in range(3):
        assert not dec.table_decode(tables[13], dec.errors_of_weight(13, 2, w)).any()


def test_larger_distance_wins_at_low_probability(tables):
    a = ch.run_qber(tables[11], [0.01], trials=100_000, seed=21)[0]
    b = ch.run_qber(tables[13], [0.01], trials=100_000, seed=21)[0]
    assert b.qber < a.qber


# ----------------------------------------------------------------------------
# grid and I/O


def test_parse_grid():
    assert ch.parse_grid("0.005:0.025:0.005") == [0.005, 0.01, 0.015, 0.02, 0.025]
    assert ch.parse_grid("0, 0.1,0.2") == [0.0, 0.1, 0.2]
    assert len(ch.parse_grid("0.005:0.25:0.005")) == 50
    with pytest.raises(PreconditionError):
        ch.parse_grid("0:1:0")


def test_csv_round_trip():
    pts = [ch.QberPoint("x", 0.1, 100, 7), ch.QberPoint("x", 0.2, 100, 30)]
    assert ch.points_from_csv(ch.points_to_csv(pts)) == pts
    dat = ch.points_to_dat(pts).splitlines()
    assert dat[0] == "# x" and dat[2].split()[0] == "0.1"


# ----------------------------------------------------------------------------
# crossings


def _curve(name, qbers, trials=10**6):
    return [ch.QberPoint(name, 0.01 * (i + 1), trials, round(q * trials)) for i, q in enumerate(qbers)]


def test_crossing_interpolates():
    x = _curve("A", [0.1, 0.2, 0.3])
    y = _curve("B", [0.2, 0.22, 0.25])
    c = ch.pair_crossing(x, y)
    # diff: -0.1, -0.02, +0.05 -> crosses between 0.02 and 0.03
    assert c.prob == pytest.approx(0.02 + 0.01 * 0.02 / 0.07)
    assert c.below_better == "A"


def test_no_crossing_and_ties():
    x = _curve("A", [0.1, 0.2])
    assert ch.pair_crossing(x, _curve("B", [0.2, 0.3])).prob is None
    same = ch.pair_crossing(x, _curve("B", [0.1, 0.2]))
    assert same.prob == 0.01 and same.below_better is None


def test_min_separation_ignores_noise():
    x = _curve("A", [0.1, 0.2, 0.3], trials=100)
    y = _curve("B", [0.11, 0.19, 0.31], trials=100)
    assert ch.pair_crossing(x, y).prob is not None
    assert ch.pair_crossing(x, y, min_separation=1.0).prob == 0.01


def test_find_threshold_median_and_errors():
    curves = {
        "A": _curve("A", [0.1, 0.2, 0.3]),
        "B": _curve("B", [0.2, 0.22, 0.25]),
        "C": _curve("C", [0.3, 0.3, 0.3]),
    }
    rep = ch.find_threshold(curves)
    found = sorted(c.prob for c in rep.crossings if c.prob is not None)
    assert rep.estimate == pytest.approx(float(np.median(found)))
    assert "threshold estimate" in rep.describe()
    with pytest.raises(PreconditionError):
        ch.find_threshold({"A": curves["A"]})
    with pytest.raises(PreconditionError):
        ch.pair_crossing(curves["A"], curves["B"][:2])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=2, max_size=8), st.floats(-0.5, 0.5))
def test_crossing_symmetry(qs, shift):
    x = _curve("A", qs)
    y = _curve("B", [min(1.0, max(0.0, q + shift * (i - len(qs) / 2) / len(qs))) for i, q in enumerate(qs)])
    c1, c2 = ch.pair_crossing(x, y), ch.pair_crossing(y, x)
    assert c1.prob == c2.prob or (c1.prob is not None and c1.prob == pytest.approx(c2.prob))
