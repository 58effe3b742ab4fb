"""Lattice Laughlin wave function at filling 1/2 (spin-1/2 singlet state).

log psi(s) = sum_k i*pi*(k-1)*(s_k+1)/2 + sum_{i<j} (s_i*s_j/2) * Log(z_i - z_j)

with principal-value logs per ordered pair i<j, and amplitude exactly zero
unless the total magnetization vanishes.  Any other per-pair branch choice
only changes the state by a configuration-independent constant, so the
principal branch with the row-major site enumeration is the convention.
"""

from __future__ import annotations

import numpy as np

from ..lattice import Lattice, LocalMove, SpinConfiguration
from .base import Ansatz, ZeroAmplitudeError

__all__ = ["LaughlinAnsatz"]


class LaughlinAnsatz(Ansatz):
    family = "laughlin"

    def __init__(self, lattice: Lattice):
        if lattice.local_dim != 2:
            raise ValueError("Laughlin state is defined for spin-1/2 sites")
        z = lattice.coords
        n = len(z)
        dz = z[:, None] - z[None, :]
        off = ~np.eye(n, dtype=bool)
        if np.any(np.abs(dz[off]) < 1e-12):
            raise ValueError("coincident site coordinates")
        logdz = np.zeros((n, n), dtype=complex)
        iu = np.triu_indices(n, k=1)
        logdz[iu] = np.log(dz[iu])
        self._logdz = logdz + logdz.T  # symmetric, zero diagonal
        self._phase = 1j * np.pi * np.arange(n)  # site k contributes when s_k=+1
        self.lattice = lattice
        self.n_sites = n
        self.local_dim = 2

    # ------------------------------------------------------------------ params
    @property
    def n_params(self) -> int:
        return 0

    def get_parameters(self) -> np.ndarray:
        return np.zeros(0, dtype=complex)

    def set_parameters(self, vec: np.ndarray) -> None:
        if len(vec):
            raise ValueError("Laughlin state has no variational parameters")

    # -------------------------------------------------------------- evaluation
    def log_psi(self, config: SpinConfiguration) -> complex | None:
        self._check_config(config)
        if config.m_z != 0:
            return None
        s = config.values.astype(float)
        pair = 0.25 * (s @ self._logdz @ s)
        phase = self._phase @ ((config.values + 1) // 2)
        return complex(pair + phase)

    def log_psi_batch(self, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        v = np.asarray(values, dtype=float)
        zero = v.sum(axis=1) != 0
        pair = 0.25 * np.einsum("ni,ij,nj->n", v, self._logdz, v)
        phase = ((v + 1) * 0.5) @ self._phase
        return pair + phase, zero

    def ratio(self, config: SpinConfiguration, move: LocalMove,
              scratch=None) -> complex:
        self._check_config(config)
        if config.m_z != 0:
            raise ZeroAmplitudeError("ratio from a zero-amplitude configuration")
        s = config.values
        delta = np.zeros(self.n_sites)
        new_mz = config.m_z
        for site, new in zip(move.sites, move.new_values):
            delta[site] = new - s[site]
            new_mz += new - int(s[site])
        if new_mz != 0:
            return 0.0 + 0.0j
        dlog = 0.5 * (delta @ self._logdz @ s.astype(float))
        dlog += 0.25 * (delta @ self._logdz @ delta)
        dlog += 0.5 * (self._phase @ delta)
        return complex(np.exp(dlog))

    def log_derivatives(self, config: SpinConfiguration,
                        subset: np.ndarray | None = None) -> np.ndarray:
        return np.zeros(0 if subset is None else len(subset), dtype=complex)

    def structure(self) -> dict:
        return {"needs_lattice": True}
