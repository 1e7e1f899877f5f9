import json

import pytest

from propbk import analytics as an
from propbk.montecarlo import BLOCK, McEstimate, compare, mc_estimate


def test_order_stat_small_case():
    est = mc_estimate("order_stat", {"n": 4, "k": 2, "t": 0.5}, 200_000, 3)
    assert compare(0.3125, est).passed
    assert abs(est.estimate - 0.3125) < 5e-3


def test_dense_moderate_probability():
    est = mc_estimate("dense", {"n": 8, "k": 2, "p": 0.2}, 200_000, 4)
    assert compare(float(an.p_dense_exact(8, 2, 0.2).analytic), est).passed


def test_dense_preset_resolved():
    est = mc_estimate("dense", {"n": 10, "k": 2, "p": "paper-k"}, 1000, 0)
    assert est.params["p"] == pytest.approx(4 * 2.302585092994046 / 10)


@pytest.mark.parametrize("n,k,h", [(4, 2, 1), (6, 2, 1), (5, 1, 1)])
def test_badpair_exact_when_one_shared_vertex(n, k, h):
    est = mc_estimate("badpair", {"n": n, "k": k, "h": h}, 200_000, 5)
    assert compare(float(an.p_badpair_single_vertex(n, k, h)), est).passed


@pytest.mark.parametrize("h", [2, 3])
def test_badpair_union_bound_upper(h):
    est = mc_estimate("badpair", {"n": 6, "k": 2, "h": h}, 200_000, 6)
    bound = h * an.p_badpair_single_vertex(6, 2, h)
    assert compare(float(bound), est, mode="upper").passed


@pytest.mark.parametrize("h", [1, 2, 3])
def test_badpair_window_bound(h):
    est = mc_estimate("badpair", {"n": 6, "k": 2, "h": h, "p": 0.5, "window": True}, 200_000, 7)
    assert compare(float(an.p_badpair_upper(6, 2, h, 0.5).analytic), est, mode="upper").passed


def test_badpair_impossible_when_h_is_2k():
    est = mc_estimate("badpair", {"n": 6, "k": 2, "h": 4}, 10_000, 1)
    assert est.successes == 0


def test_colorer_success_target():
    est = mc_estimate("colorer_success", {"v": 60, "n": 8, "m": 10, "k": 1}, 40, 2)
    assert 0 <= est.estimate <= 1 and est.trials == 40


def test_missing_params_and_unknown_target():
    with pytest.raises(ValueError, match="missing"):
        mc_estimate("dense", {"n": 8, "k": 2}, 10, 0)
    with pytest.raises(ValueError, match="unknown target"):
        mc_estimate("spacing", {}, 10, 0)
    with pytest.raises(ValueError):
        mc_estimate("order_stat", {"n": 4, "k": 2, "t": 0.5}, 0, 0)


def test_partition_invariance_and_reproducibility():
    prm = {"n": 12, "k": 3, "t": 0.8}
    trials = 3 * BLOCK + 17
    a = mc_estimate("order_stat", prm, trials, 9)
    b = mc_estimate("order_stat", prm, trials, 9, jobs=3)
    c = mc_estimate("order_stat", prm, trials, 9)
    assert a.successes == b.successes == c.successes
    assert mc_estimate("order_stat", prm, trials, 10).successes != a.successes


def test_doubling_trials_stays_within_six_sigma():
    prm = {"n": 10, "k": 2, "p": 0.1}
    small = mc_estimate("dense", prm, 100_000, 21)
    big = mc_estimate("dense", prm, 200_000, 21)
    assert abs(big.estimate - small.estimate) <= 6 * small.std_error


def test_compare_modes():
    est = McEstimate("order_stat", {}, 1_000_000, 0, 313_100)
    v = compare(0.3125, est, 3)
    assert v.passed and v.sigma == pytest.approx(4.6e-4, rel=0.01)
    zero = McEstimate("x", {}, 100, 0, 0)
    assert compare(0.0, zero).passed
    assert compare(1e-12, zero).passed
    assert not compare(0.5, zero).passed
    assert compare(0.5, McEstimate("x", {}, 100, 0, 10), mode="upper").passed
    assert not compare(0.01, McEstimate("x", {}, 10_000, 0, 5000), mode="upper").passed
    with pytest.raises(ValueError):
        compare(0.1, zero, 0)
    with pytest.raises(ValueError):
        compare(0.1, zero, 3, mode="lower")


def test_serialization():
    est = mc_estimate("order_stat", {"n": 4, "k": 2, "t": 0.5}, 1000, 1)
    d = json.loads(est.to_json())
    assert d["estimate"] == est.estimate and d["std_error"] == est.std_error
    lines = est.to_csv().splitlines()
    assert lines[0] == "target,params,trials,seed,estimate,std_error"
    assert lines[1].startswith("order_stat,k=2;n=4;t=0.5,1000,1,")
