import json
import math
import os
import subprocess

import pytest

import bicmwb


LN2 = math.log(2.0)


def test_builtin_coefficients():
    qpsk = bicmwb.make_builtin("qpsk", "gray")
    e = bicmwb.bicm_coeffs(qpsk)
    assert e.c1 == pytest.approx(1.0, abs=1e-12)
    assert e.c2 == pytest.approx(-0.5, abs=1e-12)

    sp = bicmwb.bicm_coeffs(bicmwb.make_builtin("16qam", "sp"))
    assert sp.c1 == pytest.approx(0.5, abs=1e-12)
    assert sp.c2 == pytest.approx(-0.31, abs=1e-12)


def test_generators_and_moments():
    pam = bicmwb.make_pam(4)
    m = pam.base.moments()
    assert abs(m.mu1) <= 1e-12
    assert m.mu2 == pytest.approx(1.0)
    assert sorted(pam.labels) == ["00", "01", "10", "11"]

    sub = pam.subconstellation(1, 0)
    assert len(sub) == 2
    assert abs(sub.moments().mu1) ** 2 == pytest.approx(0.8)


def test_capacity_paths_agree():
    qpsk = bicmwb.make_builtin("qpsk", "gray")
    cm = bicmwb.cm_capacity(qpsk.base, 0.5)
    bicm = bicmwb.bicm_capacity(qpsk, 0.5)
    direct = bicmwb.bicm_capacity_direct(qpsk, 0.5)
    assert cm.nats == pytest.approx(bicm.nats, abs=1e-9)
    assert bicm.nats == pytest.approx(direct.nats, abs=1e-9)
    assert bicm.bits == pytest.approx(bicm.nats / LN2)
    assert bicmwb.cm_capacity(qpsk.base, 0.0).nats == 0.0
    assert bicmwb.gaussian_reference(1.0).nats == pytest.approx(LN2)


def test_monte_carlo_is_deterministic():
    qpsk = bicmwb.make_builtin("qpsk", "gray")
    mc = bicmwb.MonteCarlo(samples=50000, seed=42)
    a = bicmwb.cm_capacity(qpsk.base, 0.3, bicmwb.ChannelModel.awgn(), mc)
    b = bicmwb.cm_capacity(qpsk.base, 0.3, bicmwb.ChannelModel.awgn(), mc)
    assert a.nats == b.nats
    assert a.std_error == b.std_error
    quad = bicmwb.cm_capacity(qpsk.base, 0.3)
    assert abs(a.nats - quad.nats) <= 4 * a.std_error + 1e-12


def test_wideband_figures_and_fading():
    qpsk = bicmwb.bicm_coeffs(bicmwb.make_builtin("qpsk", "gray"))
    f = bicmwb.wideband_figures(qpsk)
    assert f.ebno_lim_linear == pytest.approx(LN2)
    assert f.ebno_lim_db == pytest.approx(-1.5917, abs=1e-3)
    assert f.slope_zeta0 == pytest.approx(4.1627, abs=1e-3)

    rayleigh = bicmwb.apply_fading(qpsk, 1.0)
    assert rayleigh.c2 == pytest.approx(-1.0)
    flat = bicmwb.wideband_figures(bicmwb.ExpansionCoeffs(1.0, 0.0))
    assert flat.slope_zeta0 is None

    penalty = bicmwb.nakagami_penalty(qpsk, 1.0, 0.01, "fix_power")
    assert penalty.delta_w == 2.0


def test_fit_recovers_gaussian_series():
    fit = bicmwb.fit_coeffs_numeric(
        lambda s: bicmwb.gaussian_reference(s).nats, bicmwb.default_fit_grid()
    )
    assert fit.c1 == pytest.approx(1.0, abs=1e-3)
    assert fit.c2 == pytest.approx(-0.5, abs=1e-3)


def test_tradeoff_roundtrip_and_exact():
    qpsk = bicmwb.bicm_coeffs(bicmwb.make_builtin("qpsk", "gray"))
    qam = bicmwb.bicm_coeffs(bicmwb.make_builtin("16qam", "gray"))
    q = bicmwb.TradeoffQuery(qpsk, qam, 0.01)
    dw = bicmwb.delta_w_approx(q, 1.3)
    assert bicmwb.delta_p_exact_quadratic(q, dw) == pytest.approx(1.3, rel=1e-9)
    with pytest.raises(bicmwb.TradeoffDiverged):
        bicmwb.delta_w_approx(q, 1.0)

    gauss = lambda s: bicmwb.gaussian_reference(s).nats
    assert bicmwb.exact_tradeoff(gauss, gauss, 0.01, 1.0) == pytest.approx(1.0, rel=1e-7)


def test_json_and_validation_errors():
    text = json.dumps(
        {
            "m": 2,
            "points": [[1, 0], [0, 1], [-1, 0], [0, -1]],
            "labels": ["00", "01", "11", "10"],
        }
    )
    lc = bicmwb.parse_constellation_json(text)
    assert isinstance(lc, bicmwb.LabeledConstellation)
    assert bicmwb.bicm_coeffs(lc).c1 == pytest.approx(1.0)

    with pytest.raises(ValueError):
        bicmwb.parse_constellation_json("{}")
    with pytest.raises(ValueError):
        bicmwb.make_psk(8, "anti-gray")
    with pytest.raises(ValueError):
        bicmwb.make_pam(3)


def test_sweep_csv_deterministic():
    qpsk = bicmwb.make_builtin("qpsk", "gray")
    kwargs = dict(axis="snr_db", start_db=-12.0, stop_db=0.0, step_db=4.0,
                  method=bicmwb.Quadrature(order=16))
    once = bicmwb.sweep_csv(qpsk, threads=1, **kwargs)
    pooled = bicmwb.sweep_csv(qpsk, threads=8, **kwargs)
    assert once == pooled
    header, *rows = once.strip().split("\n")
    assert header == "x_db,cm_bits,bicm_bits,gaussian_bits,series_bits,linear_approx_bits"
    assert len(rows) == 4


def test_cli_end_to_end():
    cli = os.environ.get("BICMWB_CLI")
    if not cli:
        pytest.skip("BICMWB_CLI not set")
    out = subprocess.run(
        [cli, "coeffs", "qpsk:gray"], check=True, capture_output=True, text=True
    ).stdout
    row = out.strip().split("\n")[1].split(",")
    assert float(row[2]) == pytest.approx(1.0)
    assert float(row[5]) == pytest.approx(-0.5)

    bad = subprocess.run([cli, "coeffs", "qpsk:bogus"], capture_output=True)
    assert bad.returncode == 2

    sweep_args = [cli, "sweep", "--constellation", "16qam:gray", "--start", "-15",
                  "--stop", "-5", "--step", "5", "--method", "quad:16"]
    single = subprocess.run(sweep_args + ["--threads", "1"], check=True,
                            capture_output=True).stdout
    pooled = subprocess.run(sweep_args + ["--threads", "8"], check=True,
                            capture_output=True).stdout
    assert single == pooled
