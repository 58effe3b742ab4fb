"""Dense/desk-scale oracle: basis enumeration, exact diagonalization, overlaps.

Basis ordering is lexicographic with site 0 most significant; local states
are ordered by value (-1[,0],+1).  Every module that enumerates the Hilbert
space goes through :func:`build_basis` so the ordering is shared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .lattice import SpinConfiguration

__all__ = [
    "Basis",
    "build_basis",
    "DenseState",
    "GroundState",
    "dense_matrix",
    "ground_state",
    "ansatz_vector",
    "overlap",
    "dense_expectation",
]

FULL_SPACE_CAP = 2**20
SECTOR_CAP = 2**24


@dataclass(frozen=True)
class Basis:
    """Enumerated (sub)space of the spin Hilbert space."""

    n_sites: int
    local_dim: int
    values: np.ndarray        # (dim, n_sites) int8 site values
    full_index: np.ndarray    # (dim,) lexicographic index in the full space
    sector_mz: int | None = None

    @property
    def dim(self) -> int:
        return len(self.full_index)

    def index_of_values(self, vals: np.ndarray) -> int:
        """Position inside this basis of one configuration."""
        idx = _lex_index(np.asarray(vals, dtype=np.int64), self.local_dim)
        pos = int(np.searchsorted(self.full_index, idx))
        if pos >= self.dim or self.full_index[pos] != idx:
            raise KeyError("configuration outside basis")
        return pos


def _lex_index(vals: np.ndarray, d: int) -> int:
    codes = (vals + 1) // 2 if d == 2 else vals + 1
    idx = 0
    for c in codes:
        idx = idx * d + int(c)
    return idx


def build_basis(n_sites: int, local_dim: int = 2,
                sector_mz: int | None = None,
                cap: int | None = None) -> Basis:
    dim = local_dim ** n_sites
    limit = cap if cap is not None else (SECTOR_CAP if sector_mz is not None
                                         else FULL_SPACE_CAP)
    if dim > limit:
        raise ValueError(f"Hilbert dimension {dim} exceeds cap {limit}")
    powers = local_dim ** np.arange(n_sites - 1, -1, -1, dtype=np.int64)
    codes = (np.arange(dim, dtype=np.int64)[:, None] // powers[None, :]) % local_dim
    values = (2 * codes - 1 if local_dim == 2 else codes - 1).astype(np.int8)
    full_index = np.arange(dim, dtype=np.int64)
    if sector_mz is not None:
        mask = values.sum(axis=1) == sector_mz
        values = values[mask]
        full_index = full_index[mask]
        if len(full_index) == 0:
            raise ValueError(f"empty magnetization sector M_z={sector_mz}")
    return Basis(n_sites, local_dim, values, full_index, sector_mz)


@dataclass
class DenseState:
    """Normalized amplitude vector over a basis."""

    vector: np.ndarray
    basis: Basis

    def normalized(self) -> "DenseState":
        nrm = np.linalg.norm(self.vector)
        if nrm == 0:
            raise ValueError("zero-norm state")
        return DenseState(self.vector / nrm, self.basis)

    def amplitude(self, config: SpinConfiguration) -> complex:
        try:
            return complex(self.vector[self.basis.index_of_values(config.values)])
        except KeyError:
            return 0.0 + 0.0j


@dataclass
class GroundState:
    """Lowest eigenpair with degeneracy: vectors span the ground space."""

    energy: float
    vectors: np.ndarray  # (dim, multiplicity)
    basis: Basis

    @property
    def multiplicity(self) -> int:
        return self.vectors.shape[1]

    def state(self, k: int = 0) -> DenseState:
        return DenseState(self.vectors[:, k], self.basis)


def dense_matrix(model, basis: Basis | None = None,
                 sector_mz: int | None = None,
                 hermiticity_tol: float = 1e-12):
    """Assemble H over ``basis`` (CSR); asserts Hermiticity."""
    if basis is None:
        basis = build_basis(model.n_sites, model.local_dim, sector_mz)
    d = basis.local_dim
    powers = d ** np.arange(basis.n_sites - 1, -1, -1, dtype=np.int64)
    rows, cols, data = [], [], []
    for pos in range(basis.dim):
        vals = basis.values[pos]
        config = SpinConfiguration(vals, d)
        base_idx = int(basis.full_index[pos])
        for conn in model.connections(config):
            idx = base_idx
            for site, new in zip(conn.sites, conn.new_values):
                old_code = (vals[site] + 1) // 2 if d == 2 else vals[site] + 1
                new_code = (new + 1) // 2 if d == 2 else new + 1
                idx += (int(new_code) - int(old_code)) * int(powers[site])
            tgt = int(np.searchsorted(basis.full_index, idx))
            if tgt >= basis.dim or basis.full_index[tgt] != idx:
                raise ValueError(
                    "connection leaves the basis (model does not conserve the sector)")
            rows.append(pos)
            cols.append(tgt)
            data.append(conn.element)
    h = scipy.sparse.csr_matrix(
        (np.asarray(data, dtype=complex), (rows, cols)),
        shape=(basis.dim, basis.dim))
    herm_gap = abs(h - h.conj().T).max()
    scale = max(1.0, abs(h).max())
    if herm_gap > hermiticity_tol * scale:
        raise AssertionError(f"assembled matrix is not Hermitian: gap {herm_gap:g}")
    return h, basis


def ground_state(model, sector_mz: int | None = None,
                 basis: Basis | None = None,
                 dense_cutoff: int = 2048,
                 degeneracy_tol: float = 1e-9,
                 n_lowest: int = 4) -> GroundState:
    """Lowest eigenpair(s); degenerate ground spaces keep their multiplicity."""
    h, basis = dense_matrix(model, basis=basis, sector_mz=sector_mz)
    if basis.dim <= dense_cutoff:
        evals, evecs = scipy.linalg.eigh(h.toarray())
    else:
        k = min(n_lowest, basis.dim - 2)
        evals, evecs = scipy.sparse.linalg.eigsh(h, k=k, which="SA")
        order = np.argsort(evals)
        evals, evecs = evals[order], evecs[:, order]
    e0 = float(evals[0])
    scale = max(1.0, abs(evals).max())
    mult = int(np.sum(evals <= e0 + degeneracy_tol * scale))
    return GroundState(e0, evecs[:, :mult], basis)


def ansatz_vector(ansatz, basis: Basis, normalize: bool = True) -> DenseState:
    """Dense amplitude vector of an ansatz over a basis (log-stabilized)."""
    logs, zero = ansatz.log_psi_batch(basis.values)
    vec = np.zeros(basis.dim, dtype=complex)
    alive = ~zero
    if np.any(alive):
        shift = logs[alive].real.max()
        vec[alive] = np.exp(logs[alive] - shift)
    state = DenseState(vec, basis)
    return state.normalized() if normalize else state


def overlap(ansatz_or_state, reference) -> float:
    """|<psi|phi>| in [0, 1]; for a degenerate reference, the projection norm."""
    if isinstance(reference, GroundState):
        basis = reference.basis
        vectors = reference.vectors
    else:
        basis = reference.basis
        vectors = reference.vector[:, None]
    if isinstance(ansatz_or_state, DenseState):
        v = ansatz_or_state.normalized().vector
    else:
        v = ansatz_vector(ansatz_or_state, basis).vector
    vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    amps = vectors.conj().T @ v
    return float(min(1.0, np.linalg.norm(amps)))


def dense_expectation(state: DenseState, model) -> complex:
    """<phi|O|phi> / <phi|phi> over the state's basis."""
    h, _ = dense_matrix(model, basis=state.basis)
    v = state.vector
    return complex(v.conj() @ (h @ v)) / complex(v.conj() @ v)
