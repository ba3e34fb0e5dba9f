import math

import pytest

import lvfb


def test_critical_radius_one_dimension():
    assert abs(lvfb.critical_radius(1.0, 1.0, 1) - math.pi / 2) < 1e-10
    assert abs(lvfb.bessel_first_zero(0.0) - 2.404825557695773) < 1e-9


def test_regimes():
    p = lvfb.builtin("superior-baseline")
    assert lvfb.classify_regime(p) == lvfb.Regime.SuperiorU
    q = lvfb.builtin("inferior-baseline")
    assert lvfb.classify_regime(q) == lvfb.Regime.InferiorU


def test_semiwave_and_k0():
    assert abs(lvfb.semiwave_slope(1, 1, 1, 0.0) - math.sqrt(1 / 3)) < 1e-6
    k0 = lvfb.find_k0(1.0, 1, 1, 1)
    assert 0 < k0 < 2
    assert abs(1.0 * lvfb.semiwave_slope(1, 1, 1, k0) - k0) < 1e-6


def test_simulate_spreads_at_large_mu():
    p = lvfb.builtin("superior-baseline")
    p.mu = 8.0
    g = lvfb.GridSpec()
    g.m_u, g.m_v, g.L_v, g.dt, g.t_end, g.output_stride = 64, 200, 20.0, 0.01, 5.0, 10
    run = lvfb.simulate(p, g, 1.5, 1.0)
    assert run["t"][0] == 0.0
    assert len(run["h"]) == 51
    assert all(b >= a for a, b in zip(run["h"], run["h"][1:]))
    assert run["audit_violations"] == 0
    assert lvfb.classify(p, g, 1.5, 1.0) == lvfb.Verdict.Spreading


def test_errors_surface_as_exceptions():
    p = lvfb.ModelParams()
    p.d1 = -1.0
    with pytest.raises(lvfb.LvfbError, match="d1"):
        p.validate()
    with pytest.raises(lvfb.LvfbError, match="NotInSpeedRange"):
        lvfb.semiwave_slope(1, 1, 1, 2.5)


def test_cli_round_trip():
    code, out, err = lvfb.run_cli(["semiwave", "--table", "-n", "4"])
    assert code == 0
    assert out.splitlines()[0] == "k,slope0"
    assert len(out.splitlines()) == 5
    code, _, err = lvfb.run_cli(["semiwave", "--mu", "0"])
    assert code == 2 and "mu" in err
