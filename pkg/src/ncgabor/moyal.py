"""Continuous phase-space picture: Moyal identity, energies, eigenproblem.

With time-frequency shifts over the whole plane ℝ×ℤ_q×ℝ̂×ℤ̂_q every window
generates a continuous tight frame:

    Σ_{c,l} ∬ |⟨f, E_{ω,c}T_{x,l}g⟩|² d(x,ω) = q·‖g‖₂²·‖f‖₂²,

the adjoint lattice degenerates to a point (scalars act on the right,
⟨f,g⟩_right = q⟨g,f⟩, tr°(b) = b/q), and the energy of the projection
built from g reduces to a weighted phase-space integral

    E(g) = (q²π/‖g‖₂²) Σ_{c,l} ∬ (x²+ω²)·|V_g g|² d(x,ω)  ≥  q,

with equality exactly on generalized Gaussians c_k·e^{−πx²−iλx}, the only
windows satisfying (∇₁±i∇₂)g ∈ span{g}.  Quadrature is the tensor
trapezoid rule of the periodized grid (x on the sample grid, ω on the FFT
bins, spectrally exact for the represented band-limited class).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal import (GridSignal, GridSpec, gaussian, hermite, inner, norm)
from .geometry import covariant


@dataclass(frozen=True)
class PhaseGrid:
    """Phase-space quadrature nodes and weights attached to a sampling grid."""

    spec: GridSpec

    @property
    def x(self) -> np.ndarray:
        """Translation nodes jΔx wrapped to [−L/2, L/2), in roll order."""
        spec = self.spec
        return (spec.dx * np.arange(spec.N) + spec.L / 2) % spec.L - spec.L / 2

    @property
    def x_weight(self) -> float:
        return self.spec.dx

    @property
    def omega(self) -> np.ndarray:
        """FFT-ordered frequency nodes; extent N/L with step 1/L."""
        return np.fft.fftfreq(self.spec.N, d=self.spec.dx)

    @property
    def omega_weight(self) -> float:
        return 1.0 / self.spec.L


def _phase_space_accumulate(f: GridSignal, g: GridSignal, weights, chunk: int = 64):
    """Σ_{x,l,ω,c} w_i(x,ω)·|⟨f, E_{ω,c}T_{x,l}g⟩|² for several weight tables.

    `weights` is a list of (N,N) arrays w[j, m] indexed by the roll-order
    translation nodes (PhaseGrid.x) and the FFT-ordered ω nodes; returns one
    accumulated quadrature value per weight, including the Δx·Δω node
    measure and plain counting over both channel indices.
    """
    spec = f.spec
    q, n = spec.q, spec.N
    grid = PhaseGrid(spec)
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)  # e^{−2πi x₀ ω_m}, x₀=−L/2
    totals = [0.0 for _ in weights]
    for l in range(q):
        gl = np.roll(g.values, l, axis=0)
        for j0 in range(0, n, chunk):
            js = np.arange(j0, min(j0 + chunk, n))
            # u[b,k,t] = f(t,k)·conj(g(t−x_b, k−l)) via time rolls
            rolled = np.stack([np.roll(gl, j, axis=1) for j in js], axis=0)
            u = f.values[None, :, :] * np.conj(rolled)
            v = spec.dx * sign[None, None, :] * np.fft.fft(u, axis=2)
            v = np.fft.fft(v, axis=1)          # channel DFT over c
            av2 = np.abs(v) ** 2               # (chunk, c, ω)
            for i, w in enumerate(weights):
                totals[i] += float(np.einsum("bcm,bm->", av2, w[js, :]))
    measure = grid.x_weight * grid.omega_weight
    return [t * measure for t in totals]


def weighted_stft_norm(f: GridSignal, g: GridSignal = None, s: float = 0.0,
                       chunk: int = 64) -> float:
    """Diagnostic modulation norm: Σ_{c,l}∬ |⟨f, E_{ω,c}T_{x,l}g⟩|·(1+|x|+|ω|)^s.

    Truncated weighted-STFT surrogate for the order-s modulation norm; the
    analyzing window defaults to the standard Gaussian.  Useful as a decay
    diagnostic only: no equivalence constants between windows are certified.
    """
    if g is None:
        g = gaussian(f.spec)
    if f.spec != g.spec:
        raise ValueError("grid mismatch")
    spec = f.spec
    grid = PhaseGrid(spec)
    weight = (1.0 + np.abs(grid.x)[:, None] + np.abs(grid.omega)[None, :]) ** s
    sign = np.where(np.arange(spec.N) % 2 == 0, 1.0, -1.0)
    total = 0.0
    for l in range(spec.q):
        gl = np.roll(g.values, l, axis=0)
        for j0 in range(0, spec.N, chunk):
            js = np.arange(j0, min(j0 + chunk, spec.N))
            rolled = np.stack([np.roll(gl, j, axis=1) for j in js], axis=0)
            u = f.values[None, :, :] * np.conj(rolled)
            v = spec.dx * sign[None, None, :] * np.fft.fft(u, axis=2)
            v = np.fft.fft(v, axis=1)
            total += float(np.einsum("bcm,bm->", np.abs(v), weight[js, :]))
    return total * grid.x_weight * grid.omega_weight


def moyal_check(f: GridSignal, g: GridSignal):
    """Both sides of the Moyal identity and their relative error."""
    if f.spec != g.spec:
        raise ValueError("grid mismatch")
    spec = f.spec
    ones = np.ones((spec.N, spec.N))
    (lhs,) = _phase_space_accumulate(f, g, [ones])
    rhs = spec.q * norm(g) ** 2 * norm(f) ** 2
    return lhs, rhs, abs(lhs - rhs) / abs(rhs)


def continuous_energy(g: GridSignal) -> float:
    """Energy of the phase-space projection p = ⟨g,g⟩/(q‖g‖₂²):

        E(g) = (π/‖g‖₂⁴) Σ_{c,l} ∬ (x²+ω²)·|V_g g|² d(x,ω)  ≥  q.

    The normalization is fixed by the projection (p♮p = p requires the
    1/(q‖g‖²) scale) and makes E scale-invariant in g; generalized
    Gaussians attain the lower bound q at any q and any amplitude.
    """
    spec = g.spec
    grid = PhaseGrid(spec)
    w = grid.x[:, None] ** 2 + grid.omega[None, :] ** 2  # both in roll/FFT order
    (val,) = _phase_space_accumulate(g, g, [w])
    return float(np.pi * val / norm(g) ** 4)


def continuous_inner_right(f: GridSignal, g: GridSignal) -> complex:
    """Scalar right pairing of the degenerate adjoint algebra: q·⟨g,f⟩."""
    return f.spec.q * inner(g, f)


def continuous_trace_r(b: complex, q: int) -> complex:
    """tr°(b) = b/q on the scalar adjoint algebra."""
    return b / q


def eigen_residual(g: GridSignal, sign: int):
    """Least-squares eigenvalue fit of (∇₁ ± i∇₂)g against g.

    Returns (λ_est, residual) with λ_est = ⟨(∇₁±i∇₂)g, g⟩/‖g‖₂² and
    residual = ‖(∇₁±i∇₂)g − λ_est·g‖₂/‖g‖₂.  Generalized Gaussians give a
    vanishing residual for the plus sign; every other window is bounded away
    from zero.
    """
    if norm(g) == 0:
        raise ValueError("zero window")
    v = covariant(g, 1) + (1j * sign) * covariant(g, 2)
    lam_est = inner(v, g) / norm(g) ** 2
    res = norm(v - lam_est * g) / norm(g)
    return lam_est, float(res)


def _coarse_stft_table(g: GridSignal, step: float, box: float):
    """V_gg(x,l,ω,c)/(q‖g‖²) on a symmetric coarse phase-space grid.

    x nodes are grid samples (step snapped to a multiple of Δx); ω nodes use
    the same spacing via direct DFT.  Returns (nodes, P[l,c,a,b]).
    """
    spec = g.spec
    stride = max(1, int(round(step / spec.dx)))
    step = stride * spec.dx
    half = int(np.floor(box / step + 1e-12))
    nodes = step * np.arange(-half, half + 1)
    x = spec.x()
    q = spec.q
    p_table = np.empty((q, q, nodes.size, nodes.size), dtype=np.complex128)
    kern = np.exp(-2j * np.pi * np.outer(x, nodes))          # (t, ω-node)
    for l in range(q):
        gl = np.roll(g.values, l, axis=0)
        for a in range(nodes.size):
            j = (stride * (a - half)) % spec.N               # roll by x_a = nodes[a]
            u = g.values * np.conj(np.roll(gl, j, axis=1))   # (k, t)
            line = spec.dx * (u @ kern)                      # (k, ω-node)
            p_table[l, :, a, :] = np.fft.fft(line, axis=0)   # channel DFT
    p_table /= q * norm(g) ** 2
    return nodes, step, p_table


def continuous_chern(g: GridSignal, step: float = 0.125, box: float = 5.0,
                     channel_tol: float = 1e-13) -> complex:
    """Chern number q²/(2πi)·tr(p[(∂₁p)(∂₂p)−(∂₂p)(∂₁p)]) of p = ⟨g,g⟩/(q‖g‖²).

    Evaluated as the reduced double phase-space integral

      (2πq²/i) ∬ (x'ω−xω')·p(ν)p(ν')p(−ν−ν')·conj(φ(ν,ν))conj(φ(ν',ν'+ν)) dν dν'

    on a truncated trapezoid grid; channel sums are exact, channel pairs with
    negligible mass are skipped.  Equals q for any window (the projection is
    the full identity class), up to quadrature truncation.
    """
    spec = g.spec
    nodes, step, p = _coarse_stft_table(g, step, box)
    q = spec.q
    m = nodes.size
    half = (m - 1) // 2
    idx = np.arange(m)
    active = [(l, c) for l in range(q) for c in range(q)
              if np.abs(p[l, c]).max() > channel_tol]
    # conj(φ(ν,ν)) continuous part e^{2πi·xω} on the (a,b) mesh
    phase_self = np.exp(2j * np.pi * np.outer(nodes, nodes))

    # third-factor index maps: x'' = −x−x' → a₃ = 3·half − a − a₂ (same in ω)
    i3 = (3 * half - idx)[None, :, None] * np.ones((m, 1, m), dtype=int)   # (b2,a,b)
    j3_base = (3 * half - idx)[None, None, :] - idx[:, None, None]          # (b2,1,b)

    total = 0.0j
    for l, c in active:
        p1 = p[l, c] * phase_self * np.exp(2j * np.pi * l * c / q)
        for lp, cp in active:
            p2 = p[lp, cp]
            p3 = p[(-l - lp) % q, (-c - cp) % q]
            ch_phase = np.exp(2j * np.pi * lp * (cp + c) / q)
            for a2 in range(m):                      # ν' time index
                xp_val = nodes[a2]
                row = i3 - a2                        # (b2,a,b) x'' indexes
                col = j3_base * np.ones((1, m, 1), dtype=int)
                valid = (row >= 0) & (row < m) & (col >= 0) & (col < m)
                third = np.where(valid,
                                 p3[np.clip(row, 0, m - 1), np.clip(col, 0, m - 1)],
                                 0.0)
                # conj(φ(ν',ν'+ν)) continuous part: e^{2πi·x'(ω'+ω)}
                ph = np.exp(2j * np.pi * xp_val * (nodes[:, None, None] + nodes[None, None, :]))
                # weight x'ω − xω'
                weight = (xp_val * nodes[None, None, :]
                          - nodes[None, :, None] * nodes[:, None, None])
                total += (p2[a2, :][:, None, None] * ph * ch_phase * third
                          * p1[None, :, :] * weight).sum()
    return total * step ** 4 * 2 * np.pi * q ** 2 / 1j


def bump_window(spec: GridSpec, width: float = 2.0, power: int = 3,
                channel=None) -> GridSignal:
    """Compactly supported C^{power−1} bump (1−(x/width)²)^power, normalized."""
    x = spec.x()
    prof = np.where(np.abs(x) < width, (1 - (x / width) ** 2) ** power, 0.0)
    vals = np.zeros((spec.q, spec.N), dtype=np.complex128)
    if channel is None:
        vals[:, :] = prof
    else:
        vals[channel % spec.q, :] = prof
    out = GridSignal(spec, vals)
    return out * (1.0 / norm(out))


def bandlimited_noise_window(spec: GridSpec, rng: np.random.Generator,
                             bandwidth: float = 2.5, envelope: float = 3.0) -> GridSignal:
    """Random band-limited noise under a Gaussian envelope, normalized."""
    z = rng.normal(size=(spec.q, spec.N)) + 1j * rng.normal(size=(spec.q, spec.N))
    zf = np.fft.fft(z, axis=1)
    zf[:, np.abs(spec.freqs()) > bandwidth] = 0.0
    prof = np.fft.ifft(zf, axis=1) * np.exp(-np.pi * (spec.x() / envelope) ** 2)[None, :]
    out = GridSignal(spec, prof)
    return out * (1.0 / norm(out))


def load_corpus_file(path, spec: GridSpec):
    """Window corpus from a plain config file.

    One window per line: "name = kind key=value ...", kinds gaussian
    (lam=complex), hermite (n=int), bump (width=, power=), noise
    (bandwidth=, envelope=, seed=).  Only gaussian entries count as
    generalized Gaussians for minimizer screening.
    """
    out = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            name, spec_str = (part.strip() for part in line.split("=", 1))
            fields = spec_str.split()
            kind, opts = fields[0], dict(f.split("=", 1) for f in fields[1:])
            if kind == "gaussian":
                w = gaussian(spec, lam=complex(opts.get("lam", "0")))
                out.append((name, w, True))
            elif kind == "hermite":
                out.append((name, hermite(spec, int(opts.get("n", "1"))), False))
            elif kind == "bump":
                out.append((name, bump_window(spec, width=float(opts.get("width", "2")),
                                              power=int(opts.get("power", "3"))), False))
            elif kind == "noise":
                rng = np.random.default_rng(int(opts.get("seed", "0")))
                out.append((name, bandlimited_noise_window(
                    spec, rng, bandwidth=float(opts.get("bandwidth", "2.5")),
                    envelope=float(opts.get("envelope", "3.0"))), False))
            else:
                raise ValueError(f"unknown corpus window kind {kind!r}")
    return out


def default_window_corpus(spec: GridSpec, seed: int = 23):
    """Twelve windows: four generalized Gaussians, Hermites, bumps, noise.

    Returns a list of (name, signal, is_generalized_gaussian).
    """
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=spec.q) + 1j * rng.normal(size=spec.q)
    entries = [
        ("gaussian", gaussian(spec), True),
        ("gaussian_lam2", gaussian(spec, lam=2.0), True),
        ("gaussian_lam_complex", gaussian(spec, lam=1.0 + 0.7j), True),
        ("gaussian_random_channels", gaussian(spec, coeffs=coeffs), True),
        ("hermite1", hermite(spec, 1), False),
        ("hermite2", hermite(spec, 2), False),
        ("hermite3", hermite(spec, 3), False),
        ("bump_w2", bump_window(spec, width=2.0), False),
        ("bump_w3", bump_window(spec, width=3.0, power=4), False),
        ("noise_a", bandlimited_noise_window(spec, rng), False),
        ("noise_b", bandlimited_noise_window(spec, rng, bandwidth=1.5), False),
        ("noise_c", bandlimited_noise_window(spec, rng, bandwidth=3.5, envelope=2.5), False),
    ]
    return entries
