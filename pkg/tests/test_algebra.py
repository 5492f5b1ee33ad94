import numpy as np
import pytest

from ncgabor.lattice import LatticeKind, TorusParams
from ncgabor.signal import GridSpec, PhasePoint, cocycle, gaussian, inner, norm
from ncgabor.algebra import (LatticeSeq, act_left, act_right, inner_left,
                             inner_right, l1_diff, load_seq, save_seq,
                             trace_l, trace_r, twisted_conv, twisted_star)
from conftest import (gaussian_probe, naive_act_left, naive_act_right,
                      naive_twisted_conv, phase_point, random_seq)

BOTH_KINDS = [LatticeKind.TIME_FREQ, LatticeKind.ADJOINT]


@pytest.fixture(params=["q1", "q2"])
def params(request, params_q1, params_q2):
    return {"q1": params_q1, "q2": params_q2}[request.param]


def test_twisted_conv_matches_naive_loop(params, rng):
    for kind in BOTH_KINDS:
        for _ in range(5):
            a = random_seq(params, kind, rng, points=7)
            b = random_seq(params, kind, rng, points=6)
            assert l1_diff(twisted_conv(a, b), naive_twisted_conv(a, b)) < 1e-14


def test_delta_is_unit(params, rng):
    for kind in BOTH_KINDS:
        a = random_seq(params, kind, rng)
        d = LatticeSeq.delta(params, kind)
        assert l1_diff(twisted_conv(d, a), a) < 1e-15
        assert l1_diff(twisted_conv(a, d), a) < 1e-15


def test_two_delta_product_mirrors_shift_composition(params):
    # δ_{ν₁} ♮ δ_{ν₂} = φ(ν₁,ν₂)·δ_{ν₁+ν₂} on the time-frequency lattice
    kind = LatticeKind.TIME_FREQ
    d1 = LatticeSeq.from_entries(params, kind, [(1, 2)], [1.0], 3.0)
    d2 = LatticeSeq.from_entries(params, kind, [(2, -1)], [1.0], 3.0)
    prod = twisted_conv(d1, d2)
    assert prod.index.tolist() == [[3, 1]]
    nu1 = phase_point(params, kind, 1, 2)
    nu2 = phase_point(params, kind, 2, -1)
    assert prod.values[0] == pytest.approx(cocycle(nu1, nu2, params.q))


def test_associativity(params, rng):
    for kind in BOTH_KINDS:
        for _ in range(10):
            a, b, c = (random_seq(params, kind, rng, points=10) for _ in range(3))
            lhs = twisted_conv(twisted_conv(a, b), c)
            rhs = twisted_conv(a, twisted_conv(b, c))
            assert l1_diff(lhs, rhs) < 1e-12


def test_involution(params, rng):
    for kind in BOTH_KINDS:
        for _ in range(10):
            a = random_seq(params, kind, rng)
            b = random_seq(params, kind, rng)
            assert l1_diff(twisted_star(twisted_star(a)), a) < 1e-15
            lhs = twisted_star(twisted_conv(a, b))
            rhs = twisted_conv(twisted_star(b), twisted_star(a))
            assert l1_diff(lhs, rhs) < 1e-12
        d = LatticeSeq.delta(params, kind)
        assert l1_diff(twisted_star(d), d) < 1e-16


def test_lattice_mismatch_rejected(params, rng):
    a = random_seq(params, LatticeKind.TIME_FREQ, rng)
    b = random_seq(params, LatticeKind.ADJOINT, rng)
    with pytest.raises(ValueError, match="lattice mismatch"):
        twisted_conv(a, b)


def test_trace_values(params, rng):
    d = LatticeSeq.delta(params, LatticeKind.TIME_FREQ)
    assert trace_l(d) == pytest.approx(1.0)
    a = random_seq(params, LatticeKind.TIME_FREQ, rng, unit_l1=False)
    # positivity: tr(a*♮a) = Σ|a(ν)|²
    val = trace_l(twisted_conv(twisted_star(a), a))
    assert val.real == pytest.approx(float(np.sum(np.abs(a.values) ** 2)))
    assert abs(val.imag) < 1e-13
    # adjoint-lattice trace carries the covolume normalization q|αβ|
    b = LatticeSeq.delta(params, LatticeKind.ADJOINT)
    assert trace_r(b) == pytest.approx(params.q * abs(params.alpha * params.beta))
    with pytest.raises(ValueError):
        trace_l(b)
    with pytest.raises(ValueError):
        trace_r(a)


def test_trace_cyclicity(params, rng):
    for _ in range(10):
        a = random_seq(params, LatticeKind.TIME_FREQ, rng)
        b = random_seq(params, LatticeKind.TIME_FREQ, rng)
        assert abs(trace_l(twisted_conv(a, b))
                   - trace_l(twisted_conv(b, a))) < 1e-13


def test_act_left_matches_naive(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f = gaussian_probe(spec, rng)
    a = random_seq(params, LatticeKind.TIME_FREQ, rng, points=6)
    assert norm(act_left(a, f) - naive_act_left(a, f)) < 1e-13


def test_act_right_matches_naive(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f = gaussian_probe(spec, rng)
    b = random_seq(params, LatticeKind.ADJOINT, rng, points=6)
    assert norm(act_right(f, b) - naive_act_right(f, b)) < 1e-13


def test_delta_acts_as_identity(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f = gaussian_probe(spec, rng)
    assert norm(act_left(LatticeSeq.delta(params, LatticeKind.TIME_FREQ), f) - f) < 1e-13
    assert norm(act_right(f, LatticeSeq.delta(params, LatticeKind.ADJOINT)) - f) < 1e-13


def test_left_action_is_module_action(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f = gaussian_probe(spec, rng)
    a = random_seq(params, LatticeKind.TIME_FREQ, rng, points=5)
    b = random_seq(params, LatticeKind.TIME_FREQ, rng, points=5)
    lhs = act_left(twisted_conv(a, b), f)
    rhs = act_left(a, act_left(b, f))
    assert norm(lhs - rhs) / norm(f) < 1e-8


def test_right_action_is_module_action(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f = gaussian_probe(spec, rng)
    b1 = random_seq(params, LatticeKind.ADJOINT, rng, points=5)
    b2 = random_seq(params, LatticeKind.ADJOINT, rng, points=5)
    lhs = act_right(act_right(f, b1), b2)
    rhs = act_right(f, twisted_conv(b1, b2))
    assert norm(lhs - rhs) / norm(f) < 1e-8


def test_inner_left_entries(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f, g = gaussian_probe(spec, rng), gaussian_probe(spec, rng)
    il = inner_left(f, g, params, 2.0)
    assert il.value_at(0, 0) == pytest.approx(inner(f, g), abs=1e-13)


def test_inner_left_hermitian(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f, g = gaussian_probe(spec, rng), gaussian_probe(spec, rng)
    lhs = twisted_star(inner_left(f, g, params, 6.0))
    rhs = inner_left(g, f, params, 6.0)
    assert l1_diff(lhs, rhs) < 1e-8


def test_inner_left_positivity(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f = gaussian_probe(spec, rng)
    assert trace_l(inner_left(f, f, params, 6.0)).real == pytest.approx(
        norm(f) ** 2, rel=1e-12)


def test_inner_right_entries(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f = gaussian_probe(spec, rng)
    b = inner_right(f, f, params, 2.0)
    scale = params.q * abs(params.alpha * params.beta)
    assert b.value_at(0, 0) == pytest.approx(norm(f) ** 2 / scale, rel=1e-12)


def test_right_trace_compatibility(params, rng):
    # tr°(<g,f>_right) = <f,g>
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f, g = gaussian_probe(spec, rng), gaussian_probe(spec, rng)
    assert trace_r(inner_right(g, f, params, 4.0)) == pytest.approx(
        inner(f, g), abs=1e-12)


def test_inner_right_linearity(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f, g = gaussian_probe(spec, rng), gaussian_probe(spec, rng)
    b1 = inner_right(f, 2j * g, params, 3.0)
    b2 = inner_right(f, g, params, 3.0)
    assert l1_diff(b1, 2j * b2) < 1e-12  # linear in the second argument
    b3 = inner_right(2j * f, g, params, 3.0)
    assert l1_diff(b3, -2j * b2) < 1e-12  # conjugate-linear in the first


def test_module_compatibility_left(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f, g = gaussian_probe(spec, rng, spread=1.5), gaussian(spec)
    a = random_seq(params, LatticeKind.TIME_FREQ, rng, points=4, span=2)
    lhs = twisted_conv(a, inner_left(f, g, params, 6.0))
    rhs = inner_left(act_left(a, f), g, params, 6.0)
    # compare on the common radius-6 box: products extend the support
    diff = lhs - rhs
    mask = np.ones(len(diff.values), dtype=bool)
    lam, _, gam, _ = diff.phase_coords()
    mask &= (np.abs(lam) <= 6.0) & (np.abs(gam) <= 6.0)
    assert float(np.sum(np.abs(diff.values[mask]))) < 1e-8

    lhs2 = twisted_conv(inner_left(f, g, params, 6.0), twisted_star(a))
    rhs2 = inner_left(f, act_left(a, g), params, 6.0)
    diff2 = lhs2 - rhs2
    lam2, _, gam2, _ = diff2.phase_coords()
    m2 = (np.abs(lam2) <= 6.0) & (np.abs(gam2) <= 6.0)
    assert float(np.sum(np.abs(diff2.values[m2]))) < 1e-8


def test_module_compatibility_right(params, rng):
    spec = GridSpec(L=22.0, N=512, q=params.q)
    f, g = gaussian_probe(spec, rng, spread=1.5), gaussian(spec)
    b = random_seq(params, LatticeKind.ADJOINT, rng, points=3, span=1)
    lhs = twisted_conv(inner_right(f, g, params, 6.0), b)
    rhs = inner_right(f, act_right(g, b), params, 6.0)
    diff = lhs - rhs
    lam, _, gam, _ = diff.phase_coords()
    m = (np.abs(lam) <= 6.0) & (np.abs(gam) <= 6.0)
    assert float(np.sum(np.abs(diff.values[m]))) < 1e-8

    lhs2 = twisted_conv(twisted_star(b), inner_right(f, g, params, 6.0))
    rhs2 = inner_right(act_right(f, b), g, params, 6.0)
    diff2 = lhs2 - rhs2
    lam2, _, gam2, _ = diff2.phase_coords()
    m2 = (np.abs(lam2) <= 6.0) & (np.abs(gam2) <= 6.0)
    assert float(np.sum(np.abs(diff2.values[m2]))) < 1e-8


def test_fundamental_identity(params, rng):
    # <f,g>·h = f·<g,h>_right, the bridge between the two module actions
    spec = GridSpec(L=22.0, N=512, q=params.q)
    radius = 6.0
    f = gaussian(spec, coeffs=np.ones(params.q))
    g = gaussian_probe(spec, rng, spread=1.0)
    h = gaussian_probe(spec, rng, spread=1.0)
    lhs = act_left(inner_left(f, g, params, radius), h)
    rhs = act_right(f, inner_right(g, h, params, radius))
    residual = norm(lhs - rhs) / norm(lhs)
    assert residual < 1e-6, f"radius={radius}, residual={residual}"


def test_l1_norm_weights(params):
    seq = LatticeSeq.from_entries(params, LatticeKind.TIME_FREQ,
                                  [(0, 0), (1, 1)], [1.0, 1.0], 2.0)
    plain = seq.l1_norm()
    weighted = seq.l1_norm(weight_s=1.0)
    t_step, _, f_step, _ = (params.alpha, None, params.beta, None)
    assert plain == pytest.approx(2.0)
    assert weighted == pytest.approx(1.0 + 1.0 + abs(t_step) + abs(f_step))


def test_pruning():
    p = TorusParams(0.5, 0.5)
    seq = LatticeSeq.from_entries(p, LatticeKind.TIME_FREQ,
                                  [(0, 0), (1, 0)], [1.0, 1e-16], 1.0)
    assert len(seq.values) == 1


def test_seq_roundtrip(tmp_path, params, rng):
    a = random_seq(params, LatticeKind.ADJOINT, rng, unit_l1=False)
    path = tmp_path / "seq.dat"
    save_seq(a, path)
    b = load_seq(path)
    assert b.params == a.params and b.kind == a.kind
    assert l1_diff(a, b) < 1e-15
