import math

import numpy as np
import pytest

import kpwave

CONFIG = """
equation = quadratic
[grid]
nx = 64
ny = 16
xmin = -4pi
xmax = 4pi
ymin = -4pi
ymax = 4pi
[run]
dt = 1e-3
t_end = 0.02
initial = soliton_quad
snapshots = 0, 0.01, 0.02
diag_stride = 5
"""


def test_material_parameters():
    inc = kpwave.incompressible_parameters(mu=1, rho0=1, A=0, D=0, nu0=1)
    assert inc["beta3"] == 1.5
    assert inc["branch"] == kpwave.SignBranch.plus

    comp = kpwave.compressible_parameters(
        lambda_=2, mu=1, rho0=1, alpha1=1, alpha2=0, gamma0=1, gamma1=2, gamma2=0
    )
    assert comp["c_ell"] == 2.0
    assert comp["c_t"] == 1.0
    assert comp["identity_residual"] == 0.0


def test_soliton_profile():
    assert kpwave.soliton_speed(kpwave.EquationKind.quadratic, 1.0) == 4.0
    x = np.linspace(-5, 5, 11)
    u = kpwave.line_soliton(
        kpwave.EquationKind.cubic, 1.0, 0.0, 0.0, kpwave.SignBranch.plus, 0.0, x
    )
    assert u.shape == x.shape
    assert u[5] == 1.0
    np.testing.assert_allclose(u, 1 / np.cosh(x), rtol=1e-14)


def test_shock_distance():
    tau = np.linspace(0, 2 * math.pi, 2048, endpoint=False)
    chi = kpwave.shock_distance(np.sin(tau), 2 * math.pi, kpwave.EquationKind.quadratic, 1 / 3)
    assert chi == pytest.approx(1.0, rel=1e-5)
    assert kpwave.shock_distance(np.ones(32), 1.0, kpwave.EquationKind.quadratic, 1.0) is None


def test_simulate_and_snapshot_round_trip(tmp_path):
    result = kpwave.simulate(CONFIG)
    assert result["steps"] == 20
    snaps = result["snapshots"]
    assert [s["time"] for s in snaps] == pytest.approx([0.0, 0.01, 0.02])
    assert snaps[-1]["field"].shape == (16, 64)
    assert np.isfinite(snaps[-1]["field"]).all()
    diag = result["diagnostics"]
    assert np.ptp(diag["mean"]) < 1e-13

    for fmt in ("f64le", "csv"):
        path = tmp_path / f"snap.{fmt}"
        s = snaps[-1]
        kpwave.write_snapshot(str(path), s["field"], s["domain"], s["time"], s["equation"],
                              s["digest"], fmt)
        back = kpwave.read_snapshot(str(path))
        np.testing.assert_array_equal(back["field"], s["field"])
        assert back["time"] == s["time"]
        assert back["equation"] == "quadratic-plus"
        np.testing.assert_array_equal(back["x"], s["x"])


def test_errors_map_to_python_exceptions(tmp_path):
    with pytest.raises(kpwave.ConfigParseError, match="line"):
        kpwave.simulate("equation = quadratic\n[grid]\nnx = 3\n")
    bad = tmp_path / "bad.f64le"
    bad.write_bytes(b"KPSNAP 2\n")
    with pytest.raises(kpwave.FormatError):
        kpwave.read_snapshot(str(bad))
    with pytest.raises(kpwave.KpwaveError):
        kpwave.incompressible_parameters(mu=-1, rho0=1, A=0, D=0)
    assert issubclass(kpwave.KpwaveError, ValueError)
