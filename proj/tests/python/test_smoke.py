"""Smoke tests for the python bindings."""

import math

import pytest

import growthlab as gl


REF = dict(a=26.826957952797257, alpha=0.3, eps=0.0, eta=0.5, delta=1.0,
           theta=0.1, theta_x=0.2, mu=0.1)


def reference(variant=None):
    if variant is None:
        variant = gl.Variant.Main
    return gl.ModelParams(variant=variant, **REF)


def test_derived_constants():
    d = gl.derive_constants(reference())
    assert d.A == pytest.approx(10.0, rel=1e-14)
    assert d.Rc == pytest.approx(3.0, rel=1e-14)


def test_steady_state_reference_values():
    sol = gl.solve_steady(reference())
    assert sol.phi_star == pytest.approx(0.11121794871794872, rel=1e-12)
    assert sol.g_gross == pytest.approx(2.9625, rel=1e-12)
    assert sol.r_gross == pytest.approx(2.6931818181818182, rel=1e-12)
    dg = gl.diagnostics(sol, reference())
    assert dg.credit_gdp == pytest.approx(0.057467948717948718, rel=1e-12)
    assert dg.ordering_ok


def test_variants():
    landless = gl.solve_steady(reference(gl.Variant.Landless))
    assert landless.r_gross == pytest.approx(3.4818181818181818, rel=1e-12)
    o3 = gl.solve_steady(reference(gl.Variant.O3))
    assert o3.g_gross == pytest.approx(2.9662921348314607, rel=1e-12)


def test_assumption_gate_raises():
    p = reference()
    p.theta_x = 0.9
    p.mu = 0.2
    assert not gl.check_assumptions(p).all_ok
    with pytest.raises(ValueError):
        gl.solve_steady(p)


def test_simulation_holds_the_steady_state():
    sol = gl.solve_steady(reference())
    traj = gl.simulate(gl.EconomyState(0, sol.phi_star, sol.r_gross), 20, reference())
    assert traj.flag == gl.TrajectoryFlag.CONVERGED
    assert len(traj.states) == 20
    levels = gl.reconstruct_levels(traj, 1.0, 1.0, reference())
    for t in range(20):
        assert levels.C_budget[t] == pytest.approx(levels.C_goods[t], rel=1e-10)


def test_shock_experiment():
    sh = gl.epsilon_shock(reference(), 0.01, 3, 15)
    assert sh.price_boom and sh.output_boom and sh.growth_lower
    assert sh.k_crossover == 4
    assert sh.long_run_growth_gap < 1e-9


def test_proposition_verdicts():
    v = gl.verify_proposition(reference(), gl.PropId.P3)
    assert v.verdict == gl.Verdict.PASS
    assert v.estimate == pytest.approx(-0.375, rel=1e-6)
    v8 = gl.verify_proposition(reference(), gl.PropId.P8)
    assert v8.verdict == gl.Verdict.PASS


def test_sampling_and_batch_verify_deterministic():
    box = gl.ParamBox.point(reference())
    box.theta = gl.Interval(0.0, 0.12)
    box.theta_x = gl.Interval(0.15, 0.3)
    box.mu = gl.Interval(0.02, 0.25)
    a = gl.sample_parameters(box, 40, seed=7)
    b = gl.sample_parameters(box, 40, seed=7)
    assert [p.theta for p in a.points] == [p.theta for p in b.points]

    summary = gl.batch_verify(box, 40, 7, [gl.PropId.P3])
    counts = summary.counts[gl.PropId.P3]
    assert counts.passes == 40
    assert counts.fails == 0


def test_labor_extension():
    nx = gl.solve_labor_share(0.3, 10.0, 0.5, 7.0)
    assert nx == pytest.approx(0.21603239440465351, rel=1e-9)
    wx = 0.5 * 7.0 * nx ** -0.5
    wk = 7.0 * (1.0 - nx) ** -0.3
    assert math.isclose(wx, wk, rel_tol=1e-10)
