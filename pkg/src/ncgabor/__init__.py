"""Vector-valued Gabor frames on ℝ×ℤ_q and the associated twisted lattice algebras.

Numerical realization of Gabor frame duality (Wexler–Raz, duality principle),
the noncommutative-torus trace calculus (derivations, curvature, Connes–Chern
numbers), sigma-model soliton energies, and the continuous Moyal-plane picture.
"""

__version__ = "0.1.0"

from .lattice import (AdjointLattice, LatticeKind, LatticePoint, TorusParams,
                      annihilator_params, enumerate_lattice, index_bounds,
                      mod_inverse, soliton_admissible)
from .signal import (GridSignal, GridSpec, PhasePoint, apply_D, apply_M,
                     cocycle, fourier_transform, gaussian, hermite, inner,
                     involution_dagger, load_signal, modulate, norm,
                     random_timefreq_probe, save_signal, tf_shift, translate)
from .algebra import (LatticeSeq, act_left, act_right, inner_left, inner_right,
                      l1_diff, load_seq, save_seq, trace_l, trace_r,
                      twisted_conv, twisted_star)
