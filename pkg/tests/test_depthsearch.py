import numpy as np
import pytest

from trotterwalk import bounds, ctqw, depthsearch, symspace, trotter


def test_reference_overlap_delegates():
    assert depthsearch.reference_overlap(16) == pytest.approx(
        ctqw.ctqw_overlap(16, ctqw.alpha_star(16), ctqw.t_star(16)), rel=1e-14
    )


def test_reference_overlap_range():
    for n in (8, 12, 20, 30):
        assert 0.5 < depthsearch.reference_overlap(n) <= 1.0


def test_reference_overlap_deficit_stable():
    cs = [n * (1 - depthsearch.reference_overlap(n)) for n in range(10, 31, 2)]
    assert max(cs) <= 2 * min(cs)


def test_numeric_depth_deterministic():
    a = depthsearch.numeric_optimal_depth(10, 2, 0.05)
    b = depthsearch.numeric_optimal_depth(10, 2, 0.05)
    assert a == b


def test_numeric_depth_frozen_case():
    # stable regression anchor for the search procedure
    res = depthsearch.numeric_optimal_depth(8, 2, 0.1)
    assert res.p_numerical == 14
    assert res.r_final == 14
    assert res.p_numerical == res.r_final * trotter.stage_count(2)


def test_numeric_depth_acceptance_postcondition():
    for n, q, eps in ((10, 2, 0.05), (12, 4, 0.02)):
        res = depthsearch.numeric_optimal_depth(n, q, eps)
        threshold = res.reference - eps
        assert res.overlap >= threshold

        def overlap_at(r):
            u = symspace.matrix_power(trotter.step_operator(n, q, ctqw.t_star(n), r), r)
            return float(abs((u.entries @ symspace.plus_state(n).amp)[0]) ** 2)

        r_below = depthsearch._steps_at(n, res.d - 1, res.level)
        if r_below < res.r_final:
            assert overlap_at(r_below) < threshold


def test_numeric_depth_monotone_in_epsilon():
    rs = [depthsearch.numeric_optimal_depth(10, 2, eps).r_final for eps in (0.01, 0.05, 0.2)]
    assert rs[0] >= rs[1] >= rs[2]


def test_numeric_depth_below_analytic_bound():
    for n in (8, 12, 16):
        q = bounds.optimal_order(n, 0.01).q_even
        numeric = depthsearch.numeric_optimal_depth(n, q, 0.01).p_numerical
        assert numeric <= bounds.analytic_depth(n, q, 0.01).p_analytic


def test_numeric_depth_rejects_bad_budget():
    with pytest.raises(ValueError):
        depthsearch.numeric_optimal_depth(8, 2, 0.0)
    with pytest.raises(ValueError):
        depthsearch.numeric_optimal_depth(8, 2, 1.0)
    with pytest.raises(ValueError):
        depthsearch.numeric_optimal_depth(8, 3, 0.1)


def test_numeric_depth_failure_diagnostics():
    # a scan budget of zero cannot move past d=1, which is insufficient here
    with pytest.raises(depthsearch.DepthSearchError) as err:
        depthsearch.numeric_optimal_depth(10, 2, 0.001, d_cap=0)
    assert err.value.n == 10
    assert err.value.best_overlap < err.value.threshold


def test_grover_curve_small_cases():
    curve = depthsearch.grover_curve(2, 1)
    assert curve[0][1] == pytest.approx(0.25)  # k=0 -> 2^-n
    assert curve[1][1] == pytest.approx(1.0, abs=1e-12)  # theta = pi/6
    with pytest.raises(ValueError):
        depthsearch.grover_curve(3, 0)


def test_grover_matches_closed_form():
    for n in (2, 7, 16):
        curve = depthsearch.grover_curve(n, 2000)
        ks = np.array([k for k, _ in curve])
        sim = np.array([ov for _, ov in curve])
        closed = depthsearch.grover_closed_form(n, ks)
        assert np.max(np.abs(sim - closed)) < 1e-9


def test_grover_peak_position():
    import math

    n = 10
    theta = math.asin(2.0 ** (-n / 2))
    k_star = round(math.pi / (4 * theta) - 0.5)
    curve = depthsearch.grover_curve(n, 2 * k_star)
    best_k = max(curve, key=lambda kv: kv[1])[0]
    assert abs(best_k - k_star) <= 1
    assert dict(curve)[k_star] >= 1 - 2.0**-n


def test_sweep_cell_record():
    record, failures = depthsearch.sweep_cell(10, 0.05, orders=(2, 4))
    assert not failures
    assert record.ratio == pytest.approx(record.p_analytical / record.p_numerical)
    assert record.ratio > 1
    assert record.q in (2, 4)


def test_sweep_cell_all_orders_fail():
    record, failures = depthsearch.sweep_cell(10, 0.001, orders=(2,), d_cap=0)
    assert record is None
    assert len(failures) == 1
    assert failures[0].q == 2


def test_ratio_sweep_ordering_and_fields():
    records, failures = depthsearch.ratio_sweep([8, 6], [0.1, 0.05], orders=(2, 4))
    assert not failures
    keys = [(r.n, r.epsilon) for r in records]
    assert keys == sorted(keys)
    assert all(r.ratio > 1 for r in records)
    with pytest.raises(ValueError):
        depthsearch.ratio_sweep([], [0.1])
