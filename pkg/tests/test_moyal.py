import numpy as np
import pytest
from scipy.integrate import quad

from ncgabor.lattice import TorusParams
from ncgabor.signal import GridSpec, gaussian, hermite, inner, norm
from ncgabor.frame import lift_scalar_window
from ncgabor.moyal import (PhaseGrid, bump_window, bandlimited_noise_window,
                           continuous_chern, continuous_energy,
                           continuous_inner_right, continuous_trace_r,
                           default_window_corpus, eigen_residual,
                           load_corpus_file, moyal_check, weighted_stft_norm)
from conftest import gaussian_probe


SPEC = GridSpec(L=16.0, N=512, q=1)


def test_moyal_identity_gaussian():
    g = gaussian(SPEC) * 2 ** 0.25
    lhs, rhs, err = moyal_check(g, g)
    assert rhs == pytest.approx(1.0)
    assert err < 1e-10


def test_moyal_identity_channel_factor():
    spec3 = GridSpec(L=16.0, N=512, q=3)
    g = gaussian(spec3)
    f = gaussian(spec3, coeffs=[1.0, 0.5j, -0.2], lam=0.8)
    lhs, rhs, err = moyal_check(f, g)
    assert rhs == pytest.approx(3 * norm(g) ** 2 * norm(f) ** 2)
    assert err < 1e-10


def test_moyal_orthogonal_pair():
    # no interference term: orthogonality of f and g is irrelevant
    g = gaussian(SPEC) * 2 ** 0.25
    h1 = hermite(SPEC, 1)
    assert abs(inner(h1, g)) < 1e-14
    lhs, rhs, err = moyal_check(h1, g)
    assert lhs == pytest.approx(1.0, abs=1e-10)  # q·‖g‖²·‖h₁‖²
    assert err < 1e-10


def test_moyal_random_pairs(rng):
    for q in (1, 2, 3):
        spec = GridSpec(L=16.0, N=512, q=q)
        for _ in range(3):
            f = gaussian_probe(spec, rng, spread=1.5)
            g = gaussian_probe(spec, rng, spread=1.5)
            _, _, err = moyal_check(f, g)
            assert err < 1e-8


def test_phase_grid_nodes():
    grid = PhaseGrid(SPEC)
    assert grid.x[0] == pytest.approx(0.0)       # roll order starts at zero shift
    assert grid.x.min() == pytest.approx(-8.0)
    assert grid.omega_weight == pytest.approx(1 / 16)
    assert grid.x_weight == pytest.approx(SPEC.dx)


def test_continuous_energy_gaussian_scale_invariant():
    for lam, scale in [(0.0, 1.0), (2.0, 1.0), (1 + 0.7j, 3.2)]:
        g = scale * gaussian(SPEC, lam=lam)
        assert continuous_energy(g) == pytest.approx(1.0, abs=1e-6)


def test_continuous_energy_lifted_gaussian():
    for q in (2, 3):
        spec = GridSpec(L=16.0, N=512, q=q)
        assert continuous_energy(gaussian(spec)) == pytest.approx(q, abs=1e-6)


def test_hermite_energy_golden_value():
    # quadrature oracle: E(h₁) = π∫(x²+ω²)|V_{h₁}h₁|² with the ambiguity
    # |V|² = e^{−πr²}(1−πr²)², evaluated in polar coordinates
    oracle, _ = quad(lambda r: 2 * np.pi ** 2 * r ** 3 * np.exp(-np.pi * r ** 2)
                     * (1 - np.pi * r ** 2) ** 2, 0, 12)
    assert oracle == pytest.approx(3.0, abs=1e-10)
    assert continuous_energy(hermite(SPEC, 1)) == pytest.approx(oracle, abs=1e-6)


def test_corpus_minimizer_screening():
    corpus = default_window_corpus(SPEC)
    assert len(corpus) == 12
    for name, w, is_gauss in corpus:
        e = continuous_energy(w)
        gap = e - SPEC.q
        assert gap > -1e-6, name
        assert (gap < 1e-6) == is_gauss, (name, gap)
    gaps = {name: continuous_energy(w) - 1 for name, w, _ in corpus}
    assert gaps["hermite1"] > 0.5


def test_corpus_file_roundtrip(tmp_path):
    path = tmp_path / "corpus.cfg"
    path.write_text("a = gaussian lam=1+1j\nb = hermite n=2\n"
                    "c = bump width=2 power=3\nd = noise seed=3\n")
    corpus = load_corpus_file(path, SPEC)
    assert [name for name, _, _ in corpus] == ["a", "b", "c", "d"]
    assert [g for _, _, g in corpus] == [True, False, False, False]
    bad = tmp_path / "bad.cfg"
    bad.write_text("x = wavelet\n")
    with pytest.raises(ValueError, match="unknown corpus"):
        load_corpus_file(bad, SPEC)


def test_eigen_residual_gaussian():
    lam_est, res = eigen_residual(gaussian(SPEC) * 2 ** 0.25, +1)
    assert abs(lam_est) < 1e-10
    assert res < 1e-8


def test_eigen_residual_generalized_gaussian():
    lam = 1.0 + 1.0j
    lam_est, res = eigen_residual(gaussian(SPEC, lam=lam), +1)
    assert lam_est == pytest.approx(lam, abs=1e-8)
    assert res < 1e-8


def test_eigen_residual_hermite_bounded_away():
    _, res = eigen_residual(hermite(SPEC, 1), +1)
    assert res > 0.5
    _, res_minus = eigen_residual(hermite(SPEC, 1), -1)
    assert res_minus > 0.5


def test_eigen_residual_minus_sign():
    # the conjugate Gaussian e^{−πx²+...} direction solves the minus equation:
    # for the standard Gaussian (∇₁−i∇₂)g = 4πi·x·g is far from span{g}
    _, res = eigen_residual(gaussian(SPEC), -1)
    assert res > 0.5


def test_continuous_trace_compatibility(rng):
    for q in (1, 3):
        spec = GridSpec(L=16.0, N=512, q=q)
        f, g = gaussian_probe(spec, rng), gaussian_probe(spec, rng)
        b = continuous_inner_right(g, f)          # right pairing <g,f> = q<f,g>
        assert continuous_trace_r(b, q) == pytest.approx(inner(f, g), abs=1e-12)


def test_continuous_chern_q1():
    g = gaussian(SPEC) * 2 ** 0.25
    c1 = continuous_chern(g)
    assert abs(c1 - 1.0) < 1e-6
    assert abs(c1.imag) < 1e-10


def test_continuous_chern_q2():
    params = TorusParams(0.5, 1 / 3, 1, 1, 2)
    g = lift_scalar_window(gaussian(GridSpec(L=16.0, N=512, q=1)), params)
    c1 = continuous_chern(g)
    assert abs(c1 - 2.0) < 1e-6


def test_weighted_stft_norm():
    # unweighted value for the unit Gaussian analyzed by itself:
    # ∬|V_gg| = ∬ e^{−π(x²+ω²)/2} d(x,ω) = 2
    g = gaussian(SPEC) * 2 ** 0.25
    assert weighted_stft_norm(g, g) == pytest.approx(2.0, abs=1e-10)
    # the weight only grows the value, monotonically in the order s
    n0 = weighted_stft_norm(g)
    n1 = weighted_stft_norm(g, s=1.0)
    n2 = weighted_stft_norm(g, s=2.0)
    assert n0 < n1 < n2
    with pytest.raises(ValueError, match="grid mismatch"):
        weighted_stft_norm(g, gaussian(GridSpec(L=16.0, N=256, q=1)))


def test_bump_and_noise_windows(rng):
    b = bump_window(SPEC, width=2.0)
    assert norm(b) == pytest.approx(1.0)
    assert np.all(np.abs(b.values[0][np.abs(SPEC.x()) > 2.0]) == 0.0)
    n = bandlimited_noise_window(SPEC, rng)
    assert norm(n) == pytest.approx(1.0)
