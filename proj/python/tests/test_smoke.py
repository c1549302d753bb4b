import math

import numpy as np
import pytest

import hyperqe as hq


def test_distance_and_isometry():
    z, w = hq.DiscPoint(0.3, -0.1), hq.DiscPoint(-0.2, 0.5)
    g = hq.translation_to(hq.DiscPoint(0.4, 0.4)) * hq.k_rotation(1.1)
    assert hq.hyp_distance(g.apply(z), g.apply(w)) == pytest.approx(hq.hyp_distance(z, w), rel=1e-12)
    assert hq.hyp_norm(hq.DiscPoint(0.5, 0.0)) == pytest.approx(2 * math.atanh(0.5))


def test_ank_round_trip():
    c = hq.ank_decompose(hq.ank_compose(hq.AnkCoords(0.7, -1.2, 2.0)))
    assert (c.s, c.u, c.theta) == pytest.approx((0.7, -1.2, 2.0), abs=1e-10)


def test_boundary_refused():
    with pytest.raises(hq.HqeError, match="DomainError"):
        hq.DiscPoint(1.0, 0.0)


def test_spherical_function_routes():
    for lam in (0.5, 2.0):
        assert hq.spherical_phi(lam, 3.0) == pytest.approx(hq.spherical_phi_series(lam, 3.0), abs=1e-9)
        assert hq.c_function_inv_abs2(lam) == pytest.approx(math.pi * lam * math.tanh(math.pi * lam), rel=1e-10)


def test_selberg_against_abel():
    k = hq.smooth_ball_kernel(2.0, 0.3)
    for lam in (0.5, 1.5):
        lhs = hq.selberg_value(k, lam, 2 * math.pi)
        assert lhs == pytest.approx(hq.fourier_of_abel_transform(k, lam), abs=1e-7)
        assert hq.h_smooth(2.0, 0.3, lam) == pytest.approx(lhs, abs=1e-7)


def test_positivity_certificate_small():
    iv = hq.Interval(math.sqrt(0.75), math.sqrt(3.75))
    cert = hq.positivity_certificate(iv, 0.1, [5.0, 10.0])
    assert cert.positive
    assert min(cert.c_min) > 0


def test_bolza_group():
    bolza = hq.FuchsianGroup.bolza()
    assert hq.systole(bolza) == pytest.approx(2 * math.acosh(1 + math.sqrt(2)), rel=1e-10)
    assert len(hq.orbit_displacements(bolza, 2.5, 8)) == hq.word_oracle_count(bolza, 2.5, 6)
    cover = hq.random_cover(bolza, 4, 7)
    assert hq.is_transitive(cover)
    assert cover.volume() == pytest.approx(16 * math.pi)
    assert hq.injectivity_radius(hq.FuchsianGroup.cyclic(1.0), hq.DiscPoint(), 3.0) == pytest.approx(0.5)


def test_toy_model_bound():
    res = hq.toy1d_variance(100.0, hq.Interval(1.0, 2.0), math.cos, 1.0)
    assert res.count == 14
    assert 0 <= res.variance <= res.bound


def test_weyl_constant():
    assert hq.weyl_predicted(hq.Interval(1.0, 4.0)) == pytest.approx(0.238508353387073, rel=1e-12)


def test_torus_eigendata(tmp_path):
    data = hq.torus_selftest(0.1, 6)
    exact = np.array(hq.torus_exact_eigenvalues(6))
    assert isinstance(data.eigenvalues, np.ndarray)
    assert np.all(np.abs(data.eigenvalues[1:] / exact[1:] - 1) < 0.1)
    path = str(tmp_path / "torus.csv")
    hq.export_eigendata(data, path)
    back = hq.ingest_eigendata(path)
    assert np.array_equal(back.eigenvectors, data.eigenvectors)


def test_pipeline_time_term_halves():
    inp = hq.PipelineInputs()
    inp.theta_norm, inp.kernel_sup, inp.systole, inp.bs_fraction, inp.kernel_rho_l2sq = 0.3, 2.0, 3.0, 0.2, 1.0
    a = hq.variance_pipeline_bounds(inp, 1.0, 2.0)
    b = hq.variance_pipeline_bounds(inp, 2.0, 2.0)
    assert b.time_term == pytest.approx(a.time_term / 2, rel=1e-15)
