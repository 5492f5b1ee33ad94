"""Twisted convolution algebras on truncated lattices and the module actions.

Finitely supported sequences a on Λ×Γ (or b on Γ⊥×Λ⊥) stand in for the
weighted ℓ¹ algebra elements.  For lattice points indexed by integer pairs
the 2-cocycle collapses to a single twist constant t per lattice:

    (a₁ ♮ a₂)(m) = Σ_k a₁(k) a₂(m−k) · exp(2πi·t·k₁(m−k)₂),
    (a*)(m)      = exp(2πi·t·m₁m₂) · conj(a(−m)),

with t = −θ on Λ×Γ and t = +θ̃ on the adjoint lattice, θ̃ = (αβq²)⁻¹+r°s°/q.
The adjoint convention is the one under which the right action composes,
(f·b₁)·b₂ = f·(b₁♮b₂).  Left/right actions and the two lattice-valued
inner products are evaluated with batched FFT shift kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import (LatticeKind, TorusParams, index_bounds,
                      lattice_generators, lattice_twist)
from .signal import GridSignal, GridSpec, _check_same_spec

PRUNE_TOL = 1e-14  # entries below this magnitude are dropped after arithmetic


@dataclass(frozen=True)
class LatticeSeq:
    """Finitely supported complex sequence on one of the two lattices.

    `index` is an (M,2) integer array of generator pairs (n₁,n₂) in
    lexicographic order with no duplicates; `values` the matching entries.
    """

    params: TorusParams
    kind: LatticeKind
    index: np.ndarray
    values: np.ndarray
    radius: float = 0.0

    def __post_init__(self):
        idx = np.asarray(self.index, dtype=np.int64).reshape(-1, 2)
        vals = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if idx.shape[0] != vals.shape[0]:
            raise ValueError("index/values length mismatch")
        idx.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "index", idx)
        object.__setattr__(self, "values", vals)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_entries(params, kind, index, values, radius=0.0, prune=PRUNE_TOL):
        """Canonicalize: merge duplicate indices, sort, drop tiny entries."""
        index = np.asarray(index, dtype=np.int64).reshape(-1, 2)
        values = np.asarray(values, dtype=np.complex128).reshape(-1)
        if index.shape[0]:
            uniq, inv = np.unique(index, axis=0, return_inverse=True)
            merged = np.zeros(uniq.shape[0], dtype=np.complex128)
            np.add.at(merged, inv, values)
            keep = np.abs(merged) > prune
            index, values = uniq[keep], merged[keep]
        return LatticeSeq(params, kind, index, values, radius)

    @staticmethod
    def delta(params, kind, radius=0.0):
        """δ₀, the unit of the twisted algebra."""
        return LatticeSeq(params, kind, np.zeros((1, 2), dtype=np.int64),
                          np.ones(1, dtype=np.complex128), radius)

    # -- coordinates -------------------------------------------------------

    def phase_coords(self):
        """(λ, l, γ, c) arrays of the support points."""
        t_step, t_slope, f_step, f_slope = lattice_generators(self.params, self.kind)
        n1, n2 = self.index[:, 0], self.index[:, 1]
        q = self.params.q
        return t_step * n1, (t_slope * n1) % q, f_step * n2, (f_slope * n2) % q

    def value_at(self, n1: int, n2: int) -> complex:
        hit = np.nonzero((self.index[:, 0] == n1) & (self.index[:, 1] == n2))[0]
        return complex(self.values[hit[0]]) if hit.size else 0.0j

    # -- norms -------------------------------------------------------------

    def l1_norm(self, weight_s: float = 0.0) -> float:
        if not self.values.size:
            return 0.0
        if weight_s == 0.0:
            return float(np.sum(np.abs(self.values)))
        lam, _, gam, _ = self.phase_coords()
        w = (1.0 + np.abs(lam) + np.abs(gam)) ** weight_s
        return float(np.sum(np.abs(self.values) * w))

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.values))

    # -- linear structure ----------------------------------------------------

    def _like(self, index, values, radius=None):
        return LatticeSeq.from_entries(self.params, self.kind, index, values,
                                       self.radius if radius is None else radius)

    def __add__(self, other):
        _check_compatible(self, other)
        return self._like(np.vstack([self.index, other.index]),
                          np.concatenate([self.values, other.values]),
                          max(self.radius, other.radius))

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        return LatticeSeq(self.params, self.kind, self.index,
                          self.values * scalar, self.radius)

    __rmul__ = __mul__

    def __neg__(self):
        return (-1.0) * self


def _check_compatible(a: LatticeSeq, b: LatticeSeq):
    if a.params != b.params or a.kind != b.kind:
        raise ValueError("lattice mismatch: sequences live on different lattices")


def l1_diff(a: LatticeSeq, b: LatticeSeq) -> float:
    """Exact ℓ¹ norm of a − b (no pruning; supports aligned automatically)."""
    _check_compatible(a, b)
    idx = np.vstack([a.index, b.index])
    vals = np.concatenate([a.values, -b.values])
    if not idx.size:
        return 0.0
    uniq, inv = np.unique(idx, axis=0, return_inverse=True)
    merged = np.zeros(uniq.shape[0], dtype=np.complex128)
    np.add.at(merged, inv, vals)
    return float(np.sum(np.abs(merged)))


# -- twisted algebra ---------------------------------------------------------


def twisted_conv(a1: LatticeSeq, a2: LatticeSeq) -> LatticeSeq:
    """♮-product; bilinear, supported on the Minkowski sum of supports."""
    _check_compatible(a1, a2)
    if not a1.values.size or not a2.values.size:
        return LatticeSeq.from_entries(a1.params, a1.kind,
                                       np.zeros((0, 2)), np.zeros(0),
                                       max(a1.radius, a2.radius))
    t = lattice_twist(a1.params, a1.kind)
    phase = np.exp(2j * np.pi * t * np.outer(a1.index[:, 0], a2.index[:, 1]))
    weights = np.outer(a1.values, a2.values) * phase
    out_idx = (a1.index[:, None, :] + a2.index[None, :, :]).reshape(-1, 2)
    return LatticeSeq.from_entries(a1.params, a1.kind, out_idx,
                                   weights.reshape(-1),
                                   max(a1.radius, a2.radius))


def twisted_star(a: LatticeSeq) -> LatticeSeq:
    """Twisted involution; satisfies (a*)* = a and (a♮b)* = b*♮a*."""
    t = lattice_twist(a.params, a.kind)
    idx = -a.index
    diag = np.exp(2j * np.pi * t * idx[:, 0] * idx[:, 1])
    return LatticeSeq.from_entries(a.params, a.kind, idx,
                                   diag * np.conj(a.values), a.radius)


def trace_l(a: LatticeSeq) -> complex:
    """tr(a) = a(0); tracial and positive on Λ×Γ."""
    if a.kind is not LatticeKind.TIME_FREQ:
        raise ValueError("trace_l expects a sequence on the time-frequency lattice")
    return a.value_at(0, 0)


def trace_r(b: LatticeSeq) -> complex:
    """tr°(b) = q|αβ|·b(0) on the adjoint lattice."""
    if b.kind is not LatticeKind.ADJOINT:
        raise ValueError("trace_r expects a sequence on the adjoint lattice")
    p = b.params
    return p.q * abs(p.alpha * p.beta) * b.value_at(0, 0)


# -- batched shift kernels ---------------------------------------------------


def _translate_batch(values: np.ndarray, spec: GridSpec,
                     shifts: np.ndarray, rolls: np.ndarray) -> np.ndarray:
    """T_{shift_m, roll_m} applied to one (q,N) array for every m; (M,q,N)."""
    F = np.fft.fft(values, axis=1)
    phase = np.exp(-2j * np.pi * np.outer(shifts, spec.freqs()))
    out = np.fft.ifft(F[None, :, :] * phase[:, None, :], axis=2)
    rows = (np.arange(spec.q)[None, :] - np.asarray(rolls, dtype=np.int64)[:, None]) % spec.q
    return out[np.arange(len(shifts))[:, None], rows, :]


def _mod_phases(spec: GridSpec, f_step: float, f_slope: int, n2s: np.ndarray, sign: float):
    """exp(sign·2πi(f_step·n₂·x + f_slope·n₂·k/q)) split into (n₂,k), (n₂,j)."""
    xph = np.exp(sign * 2j * np.pi * np.outer(f_step * n2s, spec.x()))
    chph = np.exp(sign * 2j * np.pi * np.outer(f_slope * n2s, np.arange(spec.q)) / spec.q)
    return chph, xph


def _raw_stft(f: GridSignal, g: GridSignal, gen, n1s, n2s) -> np.ndarray:
    """V[a,b] = ⟨f, E_{f_step·b, f_slope·b} T_{t_step·a, t_slope·a} g⟩."""
    t_step, t_slope, f_step, f_slope = gen
    spec = f.spec
    tg = _translate_batch(g.values, spec, t_step * n1s, (t_slope * n1s) % spec.q)
    u = f.values[None, :, :] * np.conj(tg)
    chph, xph = _mod_phases(spec, f_step, f_slope, n2s, sign=-1.0)
    partial = np.einsum("akj,bk->abj", u, chph)
    return spec.dx * np.einsum("abj,bj->ab", partial, xph)


def _raw_superpose(coeff: np.ndarray, g: GridSignal, gen, n1s, n2s) -> GridSignal:
    """Σ_{a,b} coeff[a,b]·E_{f_step·b, f_slope·b} T_{t_step·a, t_slope·a} g."""
    t_step, t_slope, f_step, f_slope = gen
    spec = g.spec
    tg = _translate_batch(g.values, spec, t_step * n1s, (t_slope * n1s) % spec.q)
    chph, xph = _mod_phases(spec, f_step, f_slope, n2s, sign=+1.0)
    w = np.einsum("ab,bk,bj->akj", coeff, chph, xph, optimize=True)
    return GridSignal(spec, np.einsum("akj,akj->kj", w, tg))


def _index_grid(seq: LatticeSeq):
    """Bounding-box ranges and dense coefficient matrix of a sparse support."""
    idx = seq.index
    n1s = np.arange(idx[:, 0].min(), idx[:, 0].max() + 1)
    n2s = np.arange(idx[:, 1].min(), idx[:, 1].max() + 1)
    dense = np.zeros((n1s.size, n2s.size), dtype=np.complex128)
    dense[idx[:, 0] - n1s[0], idx[:, 1] - n2s[0]] = seq.values
    return n1s, n2s, dense


def _adjoint_self_phase(params: TorusParams, n1s, n2s) -> np.ndarray:
    """φ(ν°,ν°) = exp(−2πi·θ̃·n₁n₂) on the adjoint index grid."""
    return np.exp(-2j * np.pi * params.adjoint_twist * np.outer(n1s, n2s))


def _check_params_spec(params: TorusParams, spec: GridSpec):
    if params.q != spec.q:
        raise ValueError(f"channel mismatch: lattice q={params.q}, grid q={spec.q}")


# -- module actions and lattice inner products -------------------------------


def act_left(a: LatticeSeq, f: GridSignal) -> GridSignal:
    """a·f = Σ a(ν) π(ν) f for a on Λ×Γ."""
    if a.kind is not LatticeKind.TIME_FREQ:
        raise ValueError("act_left expects a time-frequency lattice sequence")
    _check_params_spec(a.params, f.spec)
    if not a.values.size:
        return GridSignal(f.spec, np.zeros_like(f.values))
    n1s, n2s, dense = _index_grid(a)
    gen = lattice_generators(a.params, LatticeKind.TIME_FREQ)
    return _raw_superpose(dense, f, gen, n1s, n2s)


def act_right(f: GridSignal, b: LatticeSeq) -> GridSignal:
    """f·b = Σ b(ν°) π°(ν°) f for b on the adjoint lattice."""
    if b.kind is not LatticeKind.ADJOINT:
        raise ValueError("act_right expects an adjoint lattice sequence")
    _check_params_spec(b.params, f.spec)
    if not b.values.size:
        return GridSignal(f.spec, np.zeros_like(f.values))
    n1s, n2s, dense = _index_grid(b)
    gen = lattice_generators(b.params, LatticeKind.ADJOINT)
    coeff = dense * _adjoint_self_phase(b.params, n1s, n2s)
    return _raw_superpose(coeff, f, gen, n1s, n2s)


def inner_left(f: GridSignal, g: GridSignal, params: TorusParams,
               radius: float) -> LatticeSeq:
    """Sampled STFT ⟨f, π(ν)g⟩ on Λ×Γ ∩ {max(|λ|,|γ|) ≤ radius}."""
    _check_same_spec(f, g)
    _check_params_spec(params, f.spec)
    k1, k2 = index_bounds(params, LatticeKind.TIME_FREQ, radius)
    n1s, n2s = np.arange(-k1, k1 + 1), np.arange(-k2, k2 + 1)
    gen = lattice_generators(params, LatticeKind.TIME_FREQ)
    v = _raw_stft(f, g, gen, n1s, n2s)
    idx = np.stack(np.meshgrid(n1s, n2s, indexing="ij"), axis=-1).reshape(-1, 2)
    return LatticeSeq.from_entries(params, LatticeKind.TIME_FREQ, idx,
                                   v.reshape(-1), radius)


def inner_right(f: GridSignal, g: GridSignal, params: TorusParams,
                radius: float) -> LatticeSeq:
    """Adjoint-lattice pairing (q|αβ|)⁻¹⟨g, π°(ν°)f⟩; linear in g."""
    _check_same_spec(f, g)
    _check_params_spec(params, f.spec)
    k1, k2 = index_bounds(params, LatticeKind.ADJOINT, radius)
    n1s, n2s = np.arange(-k1, k1 + 1), np.arange(-k2, k2 + 1)
    gen = lattice_generators(params, LatticeKind.ADJOINT)
    v = _raw_stft(g, f, gen, n1s, n2s)
    v = v * np.conj(_adjoint_self_phase(params, n1s, n2s))
    v /= params.q * abs(params.alpha * params.beta)
    idx = np.stack(np.meshgrid(n1s, n2s, indexing="ij"), axis=-1).reshape(-1, 2)
    return LatticeSeq.from_entries(params, LatticeKind.ADJOINT, idx,
                                   v.reshape(-1), radius)


# -- serialization ------------------------------------------------------------


def save_seq(a: LatticeSeq, path):
    """Header "alpha beta r s q kind radius", then rows "n1 n2 re im"."""
    p = a.params
    with open(path, "w") as fh:
        fh.write(f"{p.alpha!r} {p.beta!r} {p.r} {p.s} {p.q} {a.kind.value} {a.radius!r}\n")
        for (n1, n2), v in zip(a.index, a.values):
            fh.write(f"{n1} {n2} {float(v.real)!r} {float(v.imag)!r}\n")


def load_seq(path) -> LatticeSeq:
    with open(path) as fh:
        head = fh.readline().split()
        params = TorusParams(alpha=float(head[0]), beta=float(head[1]),
                             r=int(head[2]), s=int(head[3]), q=int(head[4]))
        kind = LatticeKind(head[5])
        radius = float(head[6])
        idx, vals = [], []
        for line in fh:
            n1, n2, re, im = line.split()
            idx.append((int(n1), int(n2)))
            vals.append(float(re) + 1j * float(im))
    return LatticeSeq.from_entries(params, kind,
                                   np.array(idx, dtype=np.int64).reshape(-1, 2),
                                   np.array(vals, dtype=np.complex128), radius)
