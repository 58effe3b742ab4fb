"""Spin Hamiltonians as sparse connection generators.

A model maps a configuration ``s`` to the list of configurations ``s'`` with
nonzero matrix element ``<s|H|s'>``.  Spin operators use S = sigma/2 for
spin-1/2 and the standard spin-1 matrices (hbar = 1).

Two backends:

* :class:`TermModel` - generic few-site operator blocks (any local dimension);
  used for AKLT, hand-built test operators and observables.
* :class:`PairChiralityModel` - fast path for spin-1/2 Hamiltonians of the
  form ``sum_{a<b} A_ab S_a.S_b + sum_t c_t S_i.(S_j x S_k)``; covers the
  nearest-neighbor Heisenberg model, the Majumdar-Ghosh chain, the chiral
  parent Hamiltonian and its local truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lattice import Lattice, LocalMove, SpinConfiguration

__all__ = [
    "Connection",
    "TermModel",
    "PairChiralityModel",
    "spin_matrices",
    "heisenberg_pair_block",
    "chirality_block",
    "heisenberg_nn",
    "majumdar_ghosh",
    "aklt",
    "laughlin_parent",
    "local_chiral",
    "spin_correlation",
    "local_energy",
]


@dataclass(frozen=True)
class Connection:
    """One nonzero ``<s|H|s'>``: changed sites of ``s'``, their new values, the element.

    ``connections(s)`` enumerates the row of H at the current configuration,
    which is what the local energy sum needs.
    """

    sites: tuple[int, ...]
    new_values: tuple[int, ...]
    element: complex

    @property
    def is_diagonal(self) -> bool:
        return not self.sites

    def move(self) -> LocalMove:
        return LocalMove.replace(self.sites, self.new_values)


def spin_matrices(local_dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Sz, S+, S-) in the basis ordered by site value (-1[,0],+1)."""
    s = (local_dim - 1) / 2.0
    m = np.arange(local_dim) - s
    sz = np.diag(m).astype(complex)
    sp = np.zeros((local_dim, local_dim), dtype=complex)
    for c in range(local_dim - 1):
        sp[c + 1, c] = np.sqrt(s * (s + 1) - m[c] * (m[c] + 1))
    return sz, sp, sp.conj().T


def heisenberg_pair_block(local_dim: int) -> np.ndarray:
    """Two-site S_i.S_j as a (d^2, d^2) matrix, first site most significant."""
    sz, sp, sm = spin_matrices(local_dim)
    return (np.kron(sz, sz)
            + 0.5 * (np.kron(sp, sm) + np.kron(sm, sp)))


def chirality_block(local_dim: int = 2) -> np.ndarray:
    """Three-site scalar chirality S_1.(S_2 x S_3) as a (d^3, d^3) matrix."""
    sz, sp, sm = spin_matrices(local_dim)
    sx = 0.5 * (sp + sm)
    sy = -0.5j * (sp - sm)
    ops = {"x": sx, "y": sy, "z": sz}
    out = np.zeros((local_dim ** 3,) * 2, dtype=complex)
    for a, b, c, sign in (("x", "y", "z", 1), ("y", "z", "x", 1), ("z", "x", "y", 1),
                          ("x", "z", "y", -1), ("y", "x", "z", -1), ("z", "y", "x", -1)):
        out += sign * np.kron(ops[a], np.kron(ops[b], ops[c]))
    return out


def _code(values: np.ndarray, local_dim: int) -> np.ndarray:
    return (values + 1) // 2 if local_dim == 2 else values + 1


def _decode(codes: np.ndarray, local_dim: int) -> np.ndarray:
    return 2 * codes - 1 if local_dim == 2 else codes - 1


class TermModel:
    """Hamiltonian given as a sum of dense operator blocks on few-site clusters."""

    def __init__(self, n_sites: int, local_dim: int,
                 terms: Sequence[tuple[Sequence[int], np.ndarray]],
                 lattice: Lattice | None = None, family: str = "custom"):
        self.n_sites = n_sites
        self.local_dim = local_dim
        self.lattice = lattice
        self.family = family
        self._terms = []
        for sites, block in terms:
            sites = tuple(int(s) for s in sites)
            dim = local_dim ** len(sites)
            block = np.asarray(block, dtype=complex)
            if block.shape != (dim, dim):
                raise ValueError("operator block shape does not match site count")
            # per-row nonzero (column, element) lists: row = current local state
            rows = []
            for c in range(dim):
                nz = np.nonzero(block[c, :])[0]
                rows.append([(int(r), complex(block[c, r])) for r in nz])
            self._terms.append((sites, rows, dim))

    def connections(self, config: SpinConfiguration) -> list[Connection]:
        if config.local_dim != self.local_dim or config.n_sites != self.n_sites:
            raise ValueError("configuration does not match model")
        d = self.local_dim
        acc: dict[tuple, complex] = {}
        vals = config.values
        for sites, rows, dim in self._terms:
            cur = 0
            for s in sites:
                cur = cur * d + int(_code(vals[s], d))
            for target, elem in rows[cur]:
                # decode target index into new values on the term's sites
                changed: list[tuple[int, int]] = []
                r = target
                for s in reversed(sites):
                    code = r % d
                    r //= d
                    new = int(_decode(np.int64(code), d))
                    if new != vals[s]:
                        changed.append((s, new))
                changed.sort()
                key = tuple(changed)
                acc[key] = acc.get(key, 0.0) + elem
        out = []
        for key, elem in acc.items():
            if key:
                sites_t, new_t = zip(*key)
            else:
                sites_t, new_t = (), ()
            out.append(Connection(tuple(sites_t), tuple(new_t), elem))
        return out


class PairChiralityModel:
    """Spin-1/2 model: sum_{a<b} A_ab S_a.S_b + sum c_t S_i.(S_j x S_k).

    ``pair_coupling`` is a real symmetric matrix with zero diagonal;
    ``chirality_terms`` is a list of (i, j, k, coefficient) with real
    coefficients multiplying the counter-clockwise-ordered chirality
    operator.  Both Hamiltonian pieces conserve total magnetization.
    """

    def __init__(self, lattice: Lattice, pair_coupling: np.ndarray,
                 chirality_terms: Sequence[tuple[int, int, int, float]] = (),
                 family: str = "custom"):
        n = lattice.n_sites
        if lattice.local_dim != 2:
            raise ValueError("PairChiralityModel requires spin-1/2")
        a = np.asarray(pair_coupling, dtype=float)
        if a.shape != (n, n) or not np.allclose(a, a.T):
            raise ValueError("pair_coupling must be a symmetric (N, N) matrix")
        self.lattice = lattice
        self.n_sites = n
        self.local_dim = 2
        self.family = family
        self.pair_coupling = a.copy()
        np.fill_diagonal(self.pair_coupling, 0.0)
        self.chirality_terms = tuple(
            (int(i), int(j), int(k), float(c)) for i, j, k, c in chirality_terms
        )

        # aggregate chirality into per-flip-pair rows:
        # element for exchanging pair (u<v) picks up (i/4)*sigma*(C[uv].s)
        cmat: dict[tuple[int, int], np.ndarray] = {}
        for (t1, t2, t3, coef) in self.chirality_terms:
            for w, up, dn in ((t1, t2, t3), (t2, t3, t1), (t3, t1, t2)):
                u, v = (up, dn) if up < dn else (dn, up)
                eta = 1.0 if (up, dn) == (u, v) else -1.0
                row = cmat.setdefault((u, v), np.zeros(n))
                row[w] += coef * eta

        pair_keys = {(u, v) for u in range(n) for v in range(u + 1, n)
                     if self.pair_coupling[u, v] != 0.0}
        pair_keys |= set(cmat)
        keys = sorted(pair_keys)
        self._flip_pairs = np.array(keys, dtype=np.int64).reshape(-1, 2)
        self._heis_coef = np.array(
            [self.pair_coupling[u, v] for u, v in keys])
        self._chi_rows = np.zeros((len(keys), n))
        for idx, key in enumerate(keys):
            if key in cmat:
                self._chi_rows[idx] = cmat[key]
        self._has_chi = bool(cmat)

    def diagonal(self, config: SpinConfiguration) -> float:
        s = config.values.astype(float)
        return 0.125 * float(s @ self.pair_coupling @ s)

    def connections(self, config: SpinConfiguration) -> list[Connection]:
        if config.local_dim != 2 or config.n_sites != self.n_sites:
            raise ValueError("configuration does not match model")
        s = config.values
        out = [Connection((), (), complex(self.diagonal(config)))]
        if len(self._flip_pairs) == 0:
            return out
        u = self._flip_pairs[:, 0]
        v = self._flip_pairs[:, 1]
        unequal = s[u] != s[v]
        elements = np.zeros(len(u), dtype=complex)
        elements += 0.5 * self._heis_coef
        if self._has_chi:
            # <s|H|s'> for the exchanged target: conjugate direction of the
            # raising/lowering action, hence the minus sign
            sigma = np.where(s[u] < s[v], 1.0, -1.0)
            elements -= 0.25j * sigma * (self._chi_rows @ s.astype(float))
        for idx in np.nonzero(unequal)[0]:
            elem = elements[idx]
            if elem == 0.0:
                continue
            a, b = int(u[idx]), int(v[idx])
            out.append(Connection((a, b), (int(s[b]), int(s[a])), complex(elem)))
        return out


def heisenberg_nn(lattice: Lattice, j: float = 1.0) -> PairChiralityModel:
    """Nearest-neighbor Heisenberg model J sum_<ij> S_i.S_j."""
    n = lattice.n_sites
    a = np.zeros((n, n))
    for (i, k) in lattice.pairs:
        a[i, k] += j
        a[k, i] += j
    return PairChiralityModel(lattice, a, family="heisenberg")


def majumdar_ghosh(lattice: Lattice, j: float = 1.0) -> PairChiralityModel:
    """J sum S_i.S_{i+1} + (J/2) sum S_i.S_{i+2} on a chain."""
    if lattice.kind != "chain":
        raise ValueError("Majumdar-Ghosh is defined on chains")
    n = lattice.n_sites
    periodic = lattice.boundary == "periodic"
    a = np.zeros((n, n))
    nn_range = n if periodic else n - 1
    for i in range(nn_range):
        k = (i + 1) % n
        a[i, k] += j
        a[k, i] += j
    nnn_range = n if periodic else n - 2
    for i in range(nnn_range):
        k = (i + 2) % n
        a[i, k] += j / 2
        a[k, i] += j / 2
    return PairChiralityModel(lattice, a, family="majumdar-ghosh")


def aklt(lattice: Lattice) -> TermModel:
    """Spin-1 AKLT chain: sum_i [X/2 + X^2/6 + 1/3], X = S_i.S_{i+1}."""
    if lattice.local_dim != 3:
        raise ValueError("AKLT requires spin-1 sites (local_dim=3)")
    if lattice.kind != "chain":
        raise ValueError("AKLT model is defined on chains")
    x = heisenberg_pair_block(3)
    block = 0.5 * x + (x @ x) / 6.0 + np.eye(9) / 3.0
    terms = [((i, j), block) for (i, j) in lattice.pairs]
    return TermModel(lattice.n_sites, 3, terms, lattice=lattice, family="aklt")


def _w_matrix(lattice: Lattice) -> np.ndarray:
    z = lattice.coords
    dz = z[:, None] - z[None, :]
    if np.any(np.abs(dz[~np.eye(len(z), dtype=bool)]) < 1e-12):
        raise ValueError("coincident site coordinates")
    with np.errstate(divide="ignore", invalid="ignore"):
        w = (z[:, None] + z[None, :]) / dz
    np.fill_diagonal(w, 0.0)
    return w


def laughlin_parent(lattice: Lattice) -> PairChiralityModel:
    """Long-range parent Hamiltonian of the lattice Laughlin state.

    (2/3) sum_{i!=j} |w_ij|^2 S_i.S_j + (2/3) sum_{i!=j!=k} conj(w_ij) w_ik S_j.S_k
    - (2i/3) sum_{i!=j!=k} conj(w_ij) w_ik S_i.(S_j x S_k), w_ij=(z_i+z_j)/(z_i-z_j),
    with the three-index sums over ordered tuples of pairwise-distinct indices.
    Reduced here to unordered pairs/triples with real coefficients (exact algebra).
    """
    if lattice.local_dim != 2:
        raise ValueError("parent Hamiltonian requires spin-1/2")
    n = lattice.n_sites
    w = _w_matrix(lattice)
    pair = (4.0 / 3.0) * (np.abs(w) ** 2 + np.real(w.conj().T @ w))
    np.fill_diagonal(pair, 0.0)
    chi = []
    g = (4.0 / 3.0) * np.imag(w.conj()[:, :, None] * w[:, None, :])  # g[i,a,b]
    for i in range(n):
        for a in range(n):
            for b in range(a + 1, n):
                if i == a or i == b:
                    continue
                c = g[i, a, b]
                if c != 0.0:
                    chi.append((i, a, b, c))
    return PairChiralityModel(lattice, pair, chi, family="h-parent")


def local_chiral(lattice: Lattice, j: float = 1.0, j_chi: float = 1.0) -> PairChiralityModel:
    """Local truncation: J sum_<ij> S_i.S_j + J_chi sum_triangles S_i.(S_j x S_k).

    Triangles are the lattice's stored counter-clockwise triangles (four per
    unit square: two edges plus a diagonal each).
    """
    n = lattice.n_sites
    a = np.zeros((n, n))
    for (p, q) in lattice.pairs:
        a[p, q] += j
        a[q, p] += j
    chi = [(t[0], t[1], t[2], j_chi) for t in lattice.triangles]
    return PairChiralityModel(lattice, a, chi, family="h-local-chiral")


def spin_correlation(i: int, j: int, n_sites: int, local_dim: int = 2) -> TermModel:
    """Observable S_i.S_j as a connection-generating model."""
    block = heisenberg_pair_block(local_dim)
    return TermModel(n_sites, local_dim, [((i, j), block)], family="spin-correlation")


def local_energy(model, ansatz, config: SpinConfiguration, scratch=None) -> complex:
    """E_loc(s) = sum_s' <s|H|s'> psi(s')/psi(s)."""
    total = 0.0 + 0.0j
    for conn in model.connections(config):
        if conn.is_diagonal:
            total += conn.element
        else:
            r = ansatz.ratio(config, conn.move(), scratch)
            if r != 0.0:
                total += conn.element * r
    return total
