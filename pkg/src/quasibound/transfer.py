"""Transfer-matrix solution of the scattering problem.

Amplitudes are taken with respect to global plane waves: left of the first
impurity ``x_m = e^{ikbm} + beta e^{-ikbm}``, right of the last one
``x_m = phi e^{ikbm}``.  Eliminating the impurity amplitude and the site it
is attached to gives, for the impurity at site ``n j``, the step

    (gamma_{n+1}, delta_{n+1}) = U^n T U^{-n} (gamma_n, delta_n)

with ``U = diag(e^{-ikbj}, e^{ikbj})``.  The product over all impurities is
``U^{N-1} (T U^{-1})^N U``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .errors import EmptyRange, NumericallyIllConditioned, SingularAtResonance
from .model import (
    LatticeParams,
    at_band_edge,
    at_resonance,
    coupling_x,
    coupling_x_array,
)

STATUS_OK = "ok"
STATUS_RESONANCE = "resonance"
STATUS_BAND_EDGE = "band_edge"

# exact-resonance limit: the first impurity site is pinned to zero, so 1 + beta = 0
LIMIT_PHI = 0j
LIMIT_BETA = -1 + 0j


@dataclass(frozen=True)
class ScatteringPoint:
    k: float
    phi: complex
    beta: complex
    t_prob: float
    r_prob: float
    status: str = STATUS_OK

    @classmethod
    def from_amplitudes(cls, k, phi, beta, status=STATUS_OK) -> "ScatteringPoint":
        phi = complex(phi)
        beta = complex(beta)
        return cls(float(k), phi, beta, abs(phi) ** 2, abs(beta) ** 2, status)

    @property
    def flux_error(self) -> float:
        return abs(self.t_prob + self.r_prob - 1.0)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Scattering results on an increasing k grid.

    Arrays hold the evaluated points only; grid points at band edges are
    listed in ``skipped`` and carry no amplitudes.
    """

    params: LatticeParams
    k: np.ndarray
    phi: np.ndarray
    beta: np.ndarray
    status: np.ndarray
    skipped: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self) -> None:
        if self.k.size > 1 and np.any(np.diff(self.k) <= 0):
            raise ValueError("spectrum k values must be strictly increasing")

    def __len__(self) -> int:
        return self.k.size

    @property
    def t_prob(self) -> np.ndarray:
        return np.abs(self.phi) ** 2

    @property
    def r_prob(self) -> np.ndarray:
        return np.abs(self.beta) ** 2

    @property
    def flux_error(self) -> np.ndarray:
        return np.abs(self.t_prob + self.r_prob - 1.0)

    @property
    def points(self) -> list[ScatteringPoint]:
        return [
            ScatteringPoint.from_amplitudes(k, ph, be, str(st))
            for k, ph, be, st in zip(self.k, self.phi, self.beta, self.status)
        ]


def propagation_matrix(k: float, span: int, p: LatticeParams) -> np.ndarray:
    if span < 1:
        raise ValueError(f"span must be >= 1, got {span}")
    th = k * p.b * span
    return np.array(
        [[complex(math.cos(th), -math.sin(th)), 0j],
         [0j, complex(math.cos(th), math.sin(th))]],
    )


def impurity_matrix(k: float, p: LatticeParams) -> np.ndarray:
    x = coupling_x(k, p)
    return np.array([[1 + x, x], [-x, 1 - x]])


def cell_operator(k: float, p: LatticeParams) -> np.ndarray:
    """``H = T U^{-1}`` with U the propagation over one impurity period."""
    return impurity_matrix(k, p) @ np.linalg.inv(propagation_matrix(k, p.j, p))


def det2(m: np.ndarray) -> complex:
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _products(ks: np.ndarray, p: LatticeParams):
    xs = coupling_x_array(ks, p)
    return _accel.transfer_products(ks, xs, p.b, p.j, p.n_imp)


def total_transfer(k: float, p: LatticeParams) -> np.ndarray:
    """Matrix taking ``(1, beta)`` before the first impurity to ``(phi, 0)`` after the last."""
    coupling_x(k, p)  # raises at singular points
    mats, log_scale = _products(np.array([float(k)]), p)
    if log_scale[0] > 0.0:
        if log_scale[0] > 700.0:
            raise NumericallyIllConditioned(
                f"transfer matrix entries overflow at k={k!r} (log scale {log_scale[0]:.1f})"
            )
        return mats[0] * math.exp(log_scale[0])
    return mats[0]


def _amplitudes(mats: np.ndarray, log_scale: np.ndarray, ks: np.ndarray):
    # det(M) = 1 identically; dividing by the computed det would reintroduce
    # the cancellation error of M11 M22 - M12 M21 in the dip.
    m21 = mats[:, 1, 0]
    m22 = mats[:, 1, 1]
    log_abs = np.log(np.abs(m22)) + log_scale
    bad = log_abs < math.log(1e-300)
    if bad.any():
        raise NumericallyIllConditioned(
            f"|M22| < 1e-300 at k={float(ks[np.argmax(bad)])!r}"
        )
    phi = np.exp(-log_scale) / m22
    beta = -m21 / m22
    return phi, beta


def scattering_amplitudes(k: float, p: LatticeParams) -> ScatteringPoint:
    try:
        coupling_x(k, p)
    except SingularAtResonance:
        return ScatteringPoint.from_amplitudes(k, LIMIT_PHI, LIMIT_BETA, STATUS_RESONANCE)
    ks = np.array([float(k)])
    phi, beta = _amplitudes(*_products(ks, p), ks)
    return ScatteringPoint.from_amplitudes(k, phi[0], beta[0])


def log_abs_phi(k: float, p: LatticeParams) -> float:
    """``ln|phi|`` without forming ``phi``; safe when ``|phi|`` underflows."""
    coupling_x(k, p)
    mats, log_scale = _products(np.array([float(k)]), p)
    return float(-log_scale[0] - np.log(np.abs(mats[0, 1, 1])))


def classify_grid(ks: np.ndarray, p: LatticeParams) -> np.ndarray:
    status = np.full(ks.shape, STATUS_OK, dtype=object)
    for i, k in enumerate(ks):
        if at_band_edge(k, p):
            status[i] = STATUS_BAND_EDGE
        elif at_resonance(k, p):
            status[i] = STATUS_RESONANCE
    return status


def k_grid(k_min: float, k_max: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise EmptyRange(f"steps must be >= 2, got {steps}")
    if not k_max > k_min:
        raise EmptyRange(f"empty k range [{k_min!r}, {k_max!r}]")
    return np.linspace(k_min, k_max, steps)


def spectrum_on_grid(p: LatticeParams, ks: np.ndarray) -> Spectrum:
    ks = np.asarray(ks, dtype=float)
    status = classify_grid(ks, p)
    keep = status != STATUS_BAND_EDGE
    kk = ks[keep]
    st = status[keep]
    phi = np.empty(kk.shape, dtype=np.complex128)
    beta = np.empty(kk.shape, dtype=np.complex128)
    regular = st == STATUS_OK
    if regular.any():
        kr = kk[regular]
        phi[regular], beta[regular] = _amplitudes(*_products(kr, p), kr)
    phi[~regular] = LIMIT_PHI
    beta[~regular] = LIMIT_BETA
    return Spectrum(p, kk, phi, beta, st.astype(str), ks[~keep])


def sweep(p: LatticeParams, k_min: float, k_max: float, steps: int) -> Spectrum:
    """Transmission spectrum on ``steps`` uniformly spaced wavenumbers.

    Band-edge grid points are skipped (recorded in ``Spectrum.skipped``);
    exact resonance hits take the analytic limit ``phi = 0``.
    """
    return spectrum_on_grid(p, k_grid(k_min, k_max, steps))
