"""Lattice geometry, spin configurations and local Monte Carlo moves.

Conventions shared by every other module:

* Sites are enumerated row-major: on a square lattice site ``i = y*Lx + x``.
* Site coordinates are complex, ``z = x + i*y`` with unit spacing and the
  origin at a corner (``centered=True`` shifts the origin to the lattice
  center; the coupling ratios of the long-range chiral Hamiltonian are not
  translation invariant, so the embedding is part of the model definition
  and is applied consistently wherever coordinates are read).
* Spin-1/2 site values are -1/+1, spin-1 values are -1/0/+1.
* Triangles are the four 3-subsets of each unit square's corners (two edges
  plus one diagonal each), stored with counter-clockwise orientation, i.e.
  positive signed area of the displacement geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Lattice",
    "SpinConfiguration",
    "LocalMove",
    "build_lattice",
    "apply_move",
]


@dataclass(frozen=True)
class Lattice:
    """Immutable site geometry: coordinates, neighbor pairs and triangles."""

    kind: str
    lx: int
    ly: int
    boundary: str
    local_dim: int
    coords: np.ndarray
    pairs: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]
    centered: bool = False

    @property
    def n_sites(self) -> int:
        return self.lx * self.ly

    def site_index(self, x: int, y: int) -> int:
        return (y % self.ly) * self.lx + (x % self.lx)

    def descriptor(self) -> str:
        """Canonical string identifying the geometry (used for checkpoint hashes)."""
        return (
            f"{self.kind}:{self.lx}x{self.ly}:{self.boundary}"
            f":d{self.local_dim}:centered={int(self.centered)}"
        )


def _chain_pairs(n: int, periodic: bool) -> list[tuple[int, int]]:
    pairs = [(i, i + 1) for i in range(n - 1)]
    if periodic and n > 2:
        pairs.append((0, n - 1))
    elif periodic and n == 2:
        pass  # wrap bond coincides with the open bond; keep it once
    return pairs


def _square_pairs(lx: int, ly: int, periodic: bool) -> list[tuple[int, int]]:
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for y in range(ly):
        for x in range(lx):
            i = y * lx + x
            steps = []
            if x + 1 < lx or periodic:
                steps.append(((x + 1) % lx, y))
            if y + 1 < ly or periodic:
                steps.append((x, (y + 1) % ly))
            for (xn, yn) in steps:
                j = yn * lx + xn
                if i == j:
                    continue
                key = (min(i, j), max(i, j))
                if key not in seen:
                    seen.add(key)
                    pairs.append(key)
    return pairs


def _square_triangles(lx: int, ly: int, periodic: bool) -> list[tuple[int, int, int]]:
    """Four triangles per unit square, each counter-clockwise in displacement space.

    Corner offsets of the anchored unit square: p00=(0,0), p10=(1,0),
    p11=(1,1), p01=(0,1).  The CCW 3-subsets are (p00,p10,p11),
    (p00,p11,p01), (p00,p10,p01), (p10,p11,p01).
    """
    tris: list[tuple[int, int, int]] = []
    seen: set[tuple[int, ...]] = set()
    xs = range(lx) if periodic else range(lx - 1)
    ys = range(ly) if periodic else range(ly - 1)
    for y in ys:
        for x in xs:
            s00 = (y % ly) * lx + (x % lx)
            s10 = (y % ly) * lx + ((x + 1) % lx)
            s11 = ((y + 1) % ly) * lx + ((x + 1) % lx)
            s01 = ((y + 1) % ly) * lx + (x % lx)
            for tri in ((s00, s10, s11), (s00, s11, s01), (s00, s10, s01), (s10, s11, s01)):
                if len(set(tri)) < 3:
                    continue  # degenerate wrap on tiny periodic lattices
                key = tuple(sorted(tri))
                if key in seen:
                    continue
                seen.add(key)
                tris.append(tri)
    return tris


def build_lattice(
    kind: str,
    lx: int,
    ly: int = 1,
    boundary: str = "open",
    local_dim: int = 2,
    centered: bool = False,
) -> Lattice:
    """Construct a chain or square lattice with pair and triangle lists."""
    if kind not in ("chain", "square"):
        raise ValueError(f"unsupported lattice kind: {kind!r}")
    if boundary not in ("open", "periodic"):
        raise ValueError(f"unsupported boundary: {boundary!r}")
    if local_dim not in (2, 3):
        raise ValueError(f"unsupported local dimension: {local_dim}")
    if lx < 1 or ly < 1:
        raise ValueError("lattice extent must be positive")
    if kind == "chain" and ly != 1:
        raise ValueError("chains require Ly=1")

    periodic = boundary == "periodic"
    if kind == "chain":
        coords = np.array([complex(x, 0.0) for x in range(lx)])
        pairs = _chain_pairs(lx, periodic)
        tris: list[tuple[int, int, int]] = []
    else:
        coords = np.array(
            [complex(x, y) for y in range(ly) for x in range(lx)]
        )
        pairs = _square_pairs(lx, ly, periodic)
        tris = _square_triangles(lx, ly, periodic)

    if centered:
        coords = coords - coords.mean()

    return Lattice(
        kind=kind,
        lx=lx,
        ly=ly,
        boundary=boundary,
        local_dim=local_dim,
        coords=coords,
        pairs=tuple(pairs),
        triangles=tuple(tris),
        centered=centered,
    )


def _legal_values(local_dim: int) -> tuple[int, ...]:
    return (-1, 1) if local_dim == 2 else (-1, 0, 1)


class SpinConfiguration:
    """Basis state: site values with a cached total magnetization."""

    __slots__ = ("values", "local_dim", "m_z")

    def __init__(self, values: Iterable[int], local_dim: int = 2):
        vals = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                          dtype=np.int8)
        legal = _legal_values(local_dim)
        if not np.all(np.isin(vals, legal)):
            raise ValueError(f"illegal site values for local_dim={local_dim}")
        self.values = vals
        self.local_dim = local_dim
        self.m_z = int(vals.sum())

    @classmethod
    def all_up(cls, n: int, local_dim: int = 2) -> "SpinConfiguration":
        return cls(np.ones(n, dtype=np.int8), local_dim)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, local_dim: int = 2,
               fixed_mz: int | None = None) -> "SpinConfiguration":
        if fixed_mz is None:
            vals = rng.choice(np.array(_legal_values(local_dim), dtype=np.int8), size=n)
            return cls(vals, local_dim)
        if local_dim != 2:
            # balanced draw for spin-1: start from zeros and place +/- pairs
            if (n + fixed_mz) % 2 != 0 and fixed_mz != 0:
                raise ValueError("cannot realize requested magnetization")
            vals = np.zeros(n, dtype=np.int8)
            n_up = (fixed_mz + n) // 2 if fixed_mz else n // 2
            n_dn = n_up - fixed_mz
            if n_up + n_dn > n:
                raise ValueError("cannot realize requested magnetization")
            sites = rng.permutation(n)
            vals[sites[:n_up]] = 1
            vals[sites[n_up:n_up + n_dn]] = -1
            return cls(vals, local_dim)
        if (n + fixed_mz) % 2 != 0 or abs(fixed_mz) > n:
            raise ValueError("cannot realize requested magnetization")
        n_up = (n + fixed_mz) // 2
        vals = -np.ones(n, dtype=np.int8)
        vals[rng.permutation(n)[:n_up]] = 1
        return cls(vals, local_dim)

    @property
    def n_sites(self) -> int:
        return len(self.values)

    def copy(self) -> "SpinConfiguration":
        dup = SpinConfiguration.__new__(SpinConfiguration)
        dup.values = self.values.copy()
        dup.local_dim = self.local_dim
        dup.m_z = self.m_z
        return dup

    def apply_inplace(self, move: "LocalMove") -> None:
        legal = _legal_values(self.local_dim)
        for site, new in zip(move.sites, move.new_values):
            if new not in legal:
                raise ValueError(f"illegal local value {new}")
            self.m_z += int(new) - int(self.values[site])
            self.values[site] = new

    def __eq__(self, other) -> bool:
        return (isinstance(other, SpinConfiguration)
                and self.local_dim == other.local_dim
                and np.array_equal(self.values, other.values))

    def __repr__(self) -> str:
        return f"SpinConfiguration({self.values.tolist()}, local_dim={self.local_dim})"


@dataclass(frozen=True)
class LocalMove:
    """Single-site flip or two-site exchange proposal."""

    kind: str  # "flip" | "exchange"
    sites: tuple[int, ...]
    new_values: tuple[int, ...]

    @classmethod
    def flip(cls, site: int, new_value: int) -> "LocalMove":
        return cls("flip", (site,), (int(new_value),))

    @classmethod
    def exchange(cls, i: int, j: int, config: SpinConfiguration) -> "LocalMove":
        return cls("exchange", (i, j),
                   (int(config.values[j]), int(config.values[i])))

    @classmethod
    def replace(cls, sites: Sequence[int], new_values: Sequence[int]) -> "LocalMove":
        """Generic multi-site replacement (used by Hamiltonian connections)."""
        return cls("replace", tuple(int(s) for s in sites),
                   tuple(int(v) for v in new_values))

    def is_identity(self, config: SpinConfiguration) -> bool:
        return all(config.values[s] == v for s, v in zip(self.sites, self.new_values))

    def inverse(self, config: SpinConfiguration) -> "LocalMove":
        """Move undoing ``self`` when applied after it; ``config`` is the pre-move state."""
        return LocalMove(self.kind, self.sites,
                         tuple(int(config.values[s]) for s in self.sites))


def apply_move(config: SpinConfiguration, move: LocalMove) -> SpinConfiguration:
    """Pure version: returns a new configuration with the move applied."""
    out = config.copy()
    out.apply_inplace(move)
    return out


def signed_area(zi: complex, zj: complex, zk: complex) -> float:
    """Twice-signed-area test helper: positive for counter-clockwise vertices."""
    return 0.5 * ((zj - zi).conjugate() * (zk - zi)).imag
