"""Shared fixtures and naive reference implementations (oracles)."""

import numpy as np
import pytest

from ncgabor.lattice import LatticeKind, TorusParams, lattice_generators
from ncgabor.signal import (GridSignal, GridSpec, PhasePoint, cocycle,
                            gaussian, inner, norm, tf_shift)
from ncgabor.algebra import LatticeSeq


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def spec1():
    """Canonical q=1 grid for radius-6 work."""
    return GridSpec(L=22.0, N=512, q=1)


@pytest.fixture(scope="session")
def params_q1():
    return TorusParams(0.5, 0.5)


@pytest.fixture(scope="session")
def params_q2():
    return TorusParams(0.5, 1.0 / 3.0, 1, 1, 2)


def phase_point(params, kind, n1, n2):
    """PhasePoint of a lattice index pair."""
    t_step, t_slope, f_step, f_slope = lattice_generators(params, kind)
    return PhasePoint(t_step * n1, t_slope * n1, f_step * n2, f_slope * n2)


def random_seq(params, kind, rng, points=8, span=3, unit_l1=True):
    idx = rng.integers(-span, span + 1, size=(points, 2))
    vals = rng.normal(size=points) + 1j * rng.normal(size=points)
    seq = LatticeSeq.from_entries(params, kind, idx, vals, float(span))
    if unit_l1:
        seq = seq * (1.0 / seq.l1_norm())
    return seq


def naive_twisted_conv(a, b):
    """Literal double loop over supports using the 4-coordinate cocycle."""
    q = a.params.q
    out = {}
    for (n1, n2), va in zip(a.index, a.values):
        nu_a = phase_point(a.params, a.kind, n1, n2)
        for (m1, m2), vb in zip(b.index, b.values):
            nu_b = phase_point(b.params, b.kind, m1, m2)
            if a.kind is LatticeKind.TIME_FREQ:
                phase = cocycle(nu_a, nu_b, q)
            else:
                phase = np.conj(cocycle(nu_a, nu_b, q))
            key = (n1 + m1, n2 + m2)
            out[key] = out.get(key, 0.0j) + va * vb * phase
    idx = np.array(list(out.keys()), dtype=np.int64).reshape(-1, 2)
    vals = np.array(list(out.values()))
    return LatticeSeq.from_entries(a.params, a.kind, idx, vals,
                                   max(a.radius, b.radius), prune=0.0)


def naive_act_left(a, f):
    """Σ a(ν)·π(ν)f term by term through tf_shift."""
    acc = np.zeros_like(f.values)
    for (n1, n2), v in zip(a.index, a.values):
        nu = phase_point(a.params, a.kind, n1, n2)
        acc = acc + v * tf_shift(f, nu, "time_freq").values
    return GridSignal(f.spec, acc)


def naive_act_right(f, b):
    """Σ b(ν°)·π°(ν°)f term by term through tf_shift."""
    acc = np.zeros_like(f.values)
    for (n1, n2), v in zip(b.index, b.values):
        nu = phase_point(b.params, b.kind, n1, n2)
        acc = acc + v * tf_shift(f, nu, "freq_time").values
    return GridSignal(f.spec, acc)


def gaussian_probe(spec, rng, spread=2.0, terms=5):
    """Unit-norm random combination of shifted Gaussians (test-local copy)."""
    base = gaussian(spec)
    acc = np.zeros_like(base.values)
    for _ in range(terms):
        nu = PhasePoint(float(rng.uniform(-spread, spread)),
                        int(rng.integers(0, spec.q)),
                        float(rng.uniform(-spread, spread)),
                        int(rng.integers(0, spec.q)))
        acc = acc + complex(rng.normal(), rng.normal()) * tf_shift(base, nu).values
    f = GridSignal(spec, acc)
    return f * (1.0 / norm(f))
