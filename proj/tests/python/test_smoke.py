import numpy as np
import pytest

import semihilbert as sh

I2 = np.eye(2, dtype=complex)
SHIFT = np.array([[0, 1], [0, 0]], dtype=complex)
DIAG_1I = np.diag([1.0, 1j]).astype(complex)


def test_seminorm_and_radii():
    assert sh.seminorm(SHIFT, I2) == pytest.approx(1.0, abs=1e-12)
    assert sh.numerical_radius(SHIFT, I2) == pytest.approx(0.5, abs=1e-9)
    assert sh.spectral_radius(SHIFT, I2) == pytest.approx(0.0, abs=1e-12)


def test_rank_one_weight_reduction():
    A = np.diag([1.0, 0.0]).astype(complex)
    T = np.array([[3, 0], [5, 7]], dtype=complex)
    red = sh.reduced(T, A)
    assert red.shape == (1, 1)
    assert red[0, 0] == pytest.approx(3.0)
    assert sh.seminorm(T, A) == pytest.approx(3.0, abs=1e-10)


def test_unbounded_operator_raises():
    A = np.diag([1.0, 0.0]).astype(complex)
    T = np.array([[1, 1], [0, 1]], dtype=complex)
    ok, residual = sh.is_a_bounded(T, A)
    assert not ok and residual > 1e-3
    with pytest.raises(sh.NotABoundedError):
        sh.reduced(T, A)


def test_center_of_mass_pythagorean_fixture():
    mc = sh.center_of_mass(DIAG_1I, I2)
    assert mc["c"] == pytest.approx(0.5 + 0.5j, abs=1e-7)
    assert mc["d"] ** 2 + abs(mc["c"]) ** 2 == pytest.approx(1.0, abs=1e-7)
    assert mc["formula_d2"] == pytest.approx(0.5, abs=1e-7)
    assert mc["gap"] <= 1e-7 * 2.0


def test_maximal_range_extremes():
    assert sh.omega_max(SHIFT, I2) == pytest.approx(0.0, abs=1e-10)
    assert sh.omega_max(DIAG_1I, I2) == pytest.approx(1.0, abs=1e-9)
    assert sh.m_max(DIAG_1I, I2) == pytest.approx(2**-0.5, abs=1e-9)


def test_normaloid_verdicts():
    assert sh.normaloid(DIAG_1I, I2)["is_normaloid"] is True
    assert sh.normaloid(SHIFT, I2)["is_normaloid"] is False


def test_numerical_range_arrays():
    angles, support, boundary = sh.numerical_range(SHIFT, I2, 64)
    assert len(angles) == len(support) == len(boundary) == 64
    np.testing.assert_allclose(support, 0.5, atol=1e-12)
    np.testing.assert_allclose(abs(boundary), 0.5, atol=1e-9)


def test_adjoint_identity():
    A = np.array([[2, 1], [1, 2]], dtype=complex)
    S = sh.a_adjoint(np.eye(2, dtype=complex), A)
    np.testing.assert_allclose(S, np.eye(2), atol=1e-10)


def test_verify_report_schema():
    rep = sh.verify(SHIFT, I2)
    for key in ("norm_a", "omega_a", "r_a", "omega_max", "m_max",
                "c_re", "c_im", "d", "formula_d2", "normaloid", "theorems"):
        assert key in rep
    assert len(rep["theorems"]) == 10
    assert all(t["verdict"] == "pass" for t in rep["theorems"])


def test_campaign_smoke():
    out = sh.campaign(8, [1, 2], seed=3)
    assert out["summary"]["fail"] == 0
    assert out["trials"] == 8


def test_svg_render():
    text = sh.svg(DIAG_1I, I2, 90)
    assert text.startswith("<svg")
    assert "polygon" in text
