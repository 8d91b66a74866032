"""Brute-force scattering solver: the stationary site equations as one dense linear system.

Unknowns are ordered ``(u_L, x_0, ..., x_L, a_0, ..., a_{N-1}, u_R)`` where
``L = (N - 1) j`` is the last impurity site and ``u_L``/``u_R`` are the
outgoing amplitudes in the left/right leads.  For incidence from the left
``u_L = beta`` and ``u_R = phi``.  Lead sites are substituted analytically:

    left  (m < 0):  x_m = in_L e^{ikbm} + u_L e^{-ikbm}
    right (m > L):  x_m = u_R e^{ikbm} + in_R e^{-ikbm}

Rows: the site equation at every interior site, the impurity equation at
every impurity, and the site equations at ``m = -1`` and ``m = L + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularAtBandEdge, SingularSystem
from .model import LatticeParams, at_band_edge, at_resonance, dispersion
from .transfer import (
    LIMIT_BETA,
    LIMIT_PHI,
    STATUS_BAND_EDGE,
    STATUS_RESONANCE,
    ScatteringPoint,
    Spectrum,
    classify_grid,
)


@dataclass(frozen=True, eq=False)
class ScatteringSystem:
    params: LatticeParams
    k: float
    matrix: np.ndarray
    rhs: np.ndarray
    incident: str = "left"

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_sites(self) -> int:
        return (self.params.n_imp - 1) * self.params.j + 1


def assemble(p: LatticeParams, k: float, incident: str = "left") -> ScatteringSystem:
    if incident not in ("left", "right"):
        raise ValueError(f"incident must be 'left' or 'right', got {incident!r}")
    if at_band_edge(k, p):
        raise SingularAtBandEdge(k)
    in_l, in_r = (1.0, 0.0) if incident == "left" else (0.0, 1.0)

    last = (p.n_imp - 1) * p.j
    n_sites = last + 1
    dim = n_sites + p.n_imp + 2
    i_left, i_right = 0, dim - 1
    mat = np.zeros((dim, dim), dtype=np.complex128)
    rhs = np.zeros(dim, dtype=np.complex128)

    energy = dispersion(k, p)
    de = energy - p.e0
    a = p.a

    def wave(m: int) -> complex:
        return complex(np.exp(1j * k * p.b * m))

    def add_site(row: int, m: int, coeff: complex) -> None:
        # coeff * x_m, with lead sites expanded in plane waves
        if m < 0:
            mat[row, i_left] += coeff * wave(-m)
            rhs[row] -= coeff * in_l * wave(m)
        elif m > last:
            mat[row, i_right] += coeff * wave(m)
            rhs[row] -= coeff * in_r * wave(-m)
        else:
            mat[row, 1 + m] += coeff

    # (E - e0) x_m + a (x_{m-1} + x_{m+1}) [+ g a_m] = 0
    row = 0
    for m in [-1, *range(n_sites), last + 1]:
        add_site(row, m, de)
        add_site(row, m - 1, a)
        add_site(row, m + 1, a)
        if 0 <= m <= last and m % p.j == 0:
            mat[row, 1 + n_sites + m // p.j] += p.g
        row += 1
    # (E - f) a_n + g x_{nj} = 0; a decoupled impurity (g = 0) stays empty
    for n in range(p.n_imp):
        col = 1 + n_sites + n
        mat[row, col] = energy - p.f if p.g != 0.0 else 1.0
        mat[row, 1 + n * p.j] = p.g
        row += 1
    return ScatteringSystem(p, float(k), mat, rhs, incident)


def solve_vector(system: ScatteringSystem, refine: int = 2) -> np.ndarray:
    """Partial-pivot LU solve plus iterative refinement with an extended-precision residual."""
    try:
        x = np.linalg.solve(system.matrix, system.rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(system.k, str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystem(system.k, "non-finite solution")
    wide = system.matrix.astype(np.clongdouble)
    wide_rhs = system.rhs.astype(np.clongdouble)
    for _ in range(refine):
        resid = (wide_rhs - wide @ x.astype(np.clongdouble)).astype(np.complex128)
        x = x + np.linalg.solve(system.matrix, resid)
    return x


def solve(system: ScatteringSystem) -> ScatteringPoint:
    """Outgoing amplitudes ``(phi, beta)`` for left incidence.

    At an exact impurity resonance the system has no unique solution for
    N > 1 (the bound state in the continuum is a homogeneous solution); the
    physical limit ``phi = 0, beta = -1`` is returned instead.
    """
    if system.incident != "left":
        raise ValueError("solve() reports phi/beta for left incidence only")
    if at_resonance(system.k, system.params):
        return ScatteringPoint.from_amplitudes(system.k, LIMIT_PHI, LIMIT_BETA, STATUS_RESONANCE)
    x = solve_vector(system)
    return ScatteringPoint.from_amplitudes(system.k, x[-1], x[0])


def spectrum_oracle(p: LatticeParams, ks) -> Spectrum:
    ks = np.asarray(ks, dtype=float)
    status = classify_grid(ks, p)
    keep = status != STATUS_BAND_EDGE
    points = [solve(assemble(p, k)) for k in ks[keep]]
    return Spectrum(
        p,
        ks[keep],
        np.array([pt.phi for pt in points], dtype=np.complex128),
        np.array([pt.beta for pt in points], dtype=np.complex128),
        np.array([pt.status for pt in points], dtype=str),
        ks[~keep],
    )


def reconstruct_transfer(p: LatticeParams, k: float) -> np.ndarray:
    """Transfer matrix rebuilt from left- and right-incidence oracle solutions.

    Left incidence gives ``M (1, beta) = (phi, 0)``; right incidence gives
    ``M (0, t') = (r', 1)``.
    """
    left = solve_vector(assemble(p, k, "left"))
    right = solve_vector(assemble(p, k, "right"))
    beta, phi = left[0], left[-1]
    t_r, r_r = right[0], right[-1]
    col1 = np.array([r_r / t_r, 1.0 / t_r])
    col0 = np.array([phi, 0.0]) - beta * col1
    return np.column_stack([col0, col1])
