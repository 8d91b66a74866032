"""Time evolution of wave packets on a finite chain carrying the impurity block.

The finite lattice has ``length`` chain sites with hard-wall ends and
``n_imp`` impurity sites appended after them, so the Hamiltonian is a real
symmetric matrix of dimension ``length + n_imp``.  Evolution is exact:
``psi(t) = V exp(-i w t) V^T psi(0)`` with hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import LatticeTooShort, PacketOutOfBounds
from .model import LatticeParams


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    params: LatticeParams
    length: int
    impurity_sites: np.ndarray
    hamiltonian: np.ndarray

    @property
    def dimension(self) -> int:
        return self.hamiltonian.shape[0]

    @property
    def block(self) -> tuple[int, int]:
        """First and last chain site of the impurity block (inclusive)."""
        return int(self.impurity_sites[0]), int(self.impurity_sites[-1])

    @property
    def block_mask(self) -> np.ndarray:
        mask = np.zeros(self.dimension, dtype=bool)
        first, last = self.block
        mask[first:last + 1] = True
        mask[self.length:] = True
        return mask

    @cached_property
    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.hamiltonian)

    def transit_time(self) -> float:
        """Time to cross the block at the maximal group velocity ``2 a b``."""
        first, last = self.block
        return (last - first) * self.params.b / (2.0 * self.params.a)


@dataclass(frozen=True, eq=False)
class WavePacketState:
    amplitudes: np.ndarray
    time: float = 0.0

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def block_bounds(p: LatticeParams, length: int) -> tuple[int, int]:
    """First and last impurity site when the block is centred in ``length`` sites."""
    span = (p.n_imp - 1) * p.j
    start = (length - span - 1) // 2
    return start, start + span


def build_lattice(p: LatticeParams, length: int) -> FiniteLattice:
    span = (p.n_imp - 1) * p.j
    if length < span + 40:
        raise LatticeTooShort(
            f"length {length} < (n_imp - 1) * j + 40 = {span + 40}"
        )
    start, _ = block_bounds(p, length)
    sites = start + p.j * np.arange(p.n_imp)
    dim = length + p.n_imp
    ham = np.zeros((dim, dim))
    idx = np.arange(length)
    ham[idx, idx] = p.e0
    ham[idx[:-1], idx[1:]] = -p.a
    ham[idx[1:], idx[:-1]] = -p.a
    imp = length + np.arange(p.n_imp)
    ham[imp, imp] = p.f
    ham[sites, imp] = -p.g
    ham[imp, sites] = -p.g
    return FiniteLattice(p, length, sites, ham)


def gaussian_packet(
    lat: FiniteLattice,
    k0: float,
    sigma: float,
    x0: float,
    *,
    allow_block_overlap: bool = False,
) -> WavePacketState:
    """Normalised packet ``exp(-(m - x0)^2 / (4 sigma^2) + i k0 b m)`` on the chain.

    The +-4 sigma support must lie inside the chain and, unless
    ``allow_block_overlap`` is set, outside the impurity block.
    """
    if sigma <= 0:
        raise PacketOutOfBounds(f"sigma must be > 0, got {sigma!r}")
    lo, hi = x0 - 4 * sigma, x0 + 4 * sigma
    if lo < 0 or hi > lat.length - 1:
        raise PacketOutOfBounds(
            f"packet support [{lo:g}, {hi:g}] leaves the chain [0, {lat.length - 1}]"
        )
    first, last = lat.block
    if not allow_block_overlap and hi >= first and lo <= last:
        raise PacketOutOfBounds(
            f"packet support [{lo:g}, {hi:g}] overlaps the impurity block [{first}, {last}]"
        )
    m = np.arange(lat.length)
    psi = np.zeros(lat.dimension, dtype=np.complex128)
    psi[:lat.length] = np.exp(-((m - x0) ** 2) / (4.0 * sigma**2) + 1j * k0 * lat.params.b * m)
    psi /= np.linalg.norm(psi)
    return WavePacketState(psi, 0.0)


def evolve(lat: FiniteLattice, state: WavePacketState, t_final: float, steps: int) -> list[WavePacketState]:
    """States at ``steps + 1`` equally spaced times from ``state.time`` to ``state.time + t_final``."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    w, v = lat.eigensystem
    coeffs = v.T @ state.amplitudes
    out = []
    for t in np.linspace(0.0, t_final, steps + 1):
        psi = v @ (np.exp(-1j * w * t) * coeffs)
        out.append(WavePacketState(psi, state.time + float(t)))
    return out


def trapped_fraction(state: WavePacketState, lat: FiniteLattice) -> float:
    return float(np.sum(np.abs(state.amplitudes[lat.block_mask]) ** 2))


def center_of_mass(state: WavePacketState, lat: FiniteLattice) -> float:
    w = np.abs(state.amplitudes[:lat.length]) ** 2
    return float(np.sum(np.arange(lat.length) * w) / np.sum(w)) * lat.params.b


def velocity_expectation(state: WavePacketState, lat: FiniteLattice) -> float:
    """Expectation of the chain velocity operator, ``2 a b sum Im(psi_m^* psi_{m+1})``.

    Impurity bonds are ignored, so this is exact only while the packet is
    off the impurity block.
    """
    psi = state.amplitudes[:lat.length]
    return float(2.0 * lat.params.a * lat.params.b * np.sum(np.imag(np.conj(psi[:-1]) * psi[1:])))


@dataclass(frozen=True)
class TrappingRun:
    times: np.ndarray
    trapped: np.ndarray
    norms: np.ndarray
    k0: float
    sigma: float
    x0: float


def trapping_series(
    p: LatticeParams,
    k0: float,
    *,
    length: int = 200,
    sigma: float = 12.0,
    x0: float | None = None,
    t_final: float | None = None,
    samples: int = 100,
    lattice: FiniteLattice | None = None,
) -> TrappingRun:
    """Trapped fraction over time for a packet started on the impurity block.

    Defaults: packet centred on the block, ``t_final`` twice the block transit
    time.
    """
    lat = lattice if lattice is not None else build_lattice(p, length)
    first, last = lat.block
    if x0 is None:
        x0 = 0.5 * (first + last)
    if t_final is None:
        t_final = 2.0 * lat.transit_time()
    psi0 = gaussian_packet(lat, k0, sigma, x0, allow_block_overlap=True)
    states = evolve(lat, psi0, t_final, samples)
    return TrappingRun(
        times=np.array([s.time for s in states]),
        trapped=np.array([trapped_fraction(s, lat) for s in states]),
        norms=np.array([s.norm for s in states]),
        k0=float(k0),
        sigma=float(sigma),
        x0=float(x0),
    )
