"""Evaluation contract shared by all trial wave functions.

Every family exposes three things the Monte Carlo machinery needs:

* ``log_psi(config)`` - complex log-amplitude, or ``None`` when the amplitude
  is exactly zero (zero is a distinct outcome, never ``-inf`` arithmetic);
* ``ratio(config, move)`` - psi(s')/psi(s) under a local move, 0 when the
  target amplitude vanishes;
* ``log_derivatives(config)`` - d log(psi)/d w_i for the flat complex
  parameter vector (holomorphic derivative; parameters are complex).

Log-amplitude branch convention: imaginary parts of individual log factors
are accumulated as-is and never reduced mod 2pi before summation; only
quantities of the form exp(log difference) are branch-free.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from ..lattice import LocalMove, SpinConfiguration, apply_move

__all__ = ["Ansatz", "ZeroAmplitudeError"]


class ZeroAmplitudeError(ValueError):
    """Raised when an operation requires psi(s) != 0 but the amplitude vanishes."""


class Ansatz(ABC):
    n_sites: int
    local_dim: int
    family: str = "ansatz"

    # ---------------------------------------------------------------- params
    @property
    @abstractmethod
    def n_params(self) -> int:
        ...

    @abstractmethod
    def get_parameters(self) -> np.ndarray:
        """Flat complex parameter vector (copy)."""

    @abstractmethod
    def set_parameters(self, vec: np.ndarray) -> None:
        ...

    def update_parameters(self, delta: np.ndarray,
                          subset: np.ndarray | None = None) -> None:
        vec = self.get_parameters()
        if subset is None:
            vec = vec + delta
        else:
            vec[subset] = vec[subset] + delta
        self.set_parameters(vec)

    # ------------------------------------------------------------ evaluation
    @abstractmethod
    def log_psi(self, config: SpinConfiguration) -> complex | None:
        ...

    def log_psi_batch(self, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Log-amplitudes of a (n, N) array of configurations.

        Returns (logs, zero_mask); entries of ``logs`` where ``zero_mask`` is
        set are meaningless.  Default implementation loops; families override
        where a vectorized form is easy.
        """
        n = values.shape[0]
        logs = np.zeros(n, dtype=complex)
        zero = np.zeros(n, dtype=bool)
        for i in range(n):
            lp = self.log_psi(SpinConfiguration(values[i], self.local_dim))
            if lp is None:
                zero[i] = True
            else:
                logs[i] = lp
        return logs, zero

    def ratio(self, config: SpinConfiguration, move: LocalMove,
              scratch=None) -> complex:
        """psi(s')/psi(s); exact 0 when psi(s')=0.  Requires psi(s) != 0."""
        base = self.log_psi(config)
        if base is None:
            raise ZeroAmplitudeError("ratio from a zero-amplitude configuration")
        target = self.log_psi(apply_move(config, move))
        if target is None:
            return 0.0 + 0.0j
        return complex(np.exp(target - base))

    @abstractmethod
    def log_derivatives(self, config: SpinConfiguration,
                        subset: np.ndarray | None = None) -> np.ndarray:
        """Holomorphic log-derivative vector Delta_i = (1/psi) dpsi/dw_i."""

    # --------------------------------------------------------------- scratch
    # Chains may hold per-configuration scratch state so that ratios under
    # local moves avoid full re-evaluation.  The default scratch is None and
    # ratios recompute from scratch; families override both hooks together.
    def make_scratch(self, config: SpinConfiguration):
        return None

    def advance_scratch(self, scratch, config: SpinConfiguration,
                        move: LocalMove):
        """Update scratch for a move about to be applied to ``config``."""
        if scratch is None:
            return None
        return self.make_scratch(apply_move(config, move))

    # ------------------------------------------------------------ checkpoint
    def structure(self) -> dict:
        """JSON-able structural metadata (everything except parameter values)."""
        raise NotImplementedError(f"{self.family} does not support checkpoints")

    def _check_config(self, config: SpinConfiguration) -> None:
        if config.n_sites != self.n_sites or config.local_dim != self.local_dim:
            raise ValueError("configuration does not match ansatz dimensions")
