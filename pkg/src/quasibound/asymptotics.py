"""Eigen-analysis of the impurity cell and the near-resonance decay law.

Near ``k_res = m pi / (b j)`` the cell operator ``H = T U^{-1}`` has
eigenvalues tending to ``(-1)^m e^{+-gamma}`` with
``cosh(gamma) = 1 + alpha`` and ``alpha = g^2 j / (4 a^2 sin^2(m pi / j))``,
so ``|phi(k_res + eps)|`` falls off like ``eps * exp(-N gamma)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NoDip, NumericallyIllConditioned
from .model import LatticeParams, coupling_x, resonant_k
from .transfer import Spectrum, log_abs_phi


@dataclass(frozen=True)
class EigenPair:
    lam: complex
    lam_inv: complex


@dataclass(frozen=True)
class AsymptoticParams:
    alpha: float
    gamma: float

    @property
    def decay_per_impurity(self) -> float:
        return math.exp(-self.gamma)


@dataclass(frozen=True)
class DipMeasurement:
    threshold: float
    k_low: float
    k_high: float

    @property
    def width(self) -> float:
        return self.k_high - self.k_low


def _half_trace(k: float, p: LatticeParams) -> complex:
    x = coupling_x(k, p)
    th = k * p.b * p.j
    return math.cos(th) + 1j * x * math.sin(th)


def cell_eigenvalues(k: float, p: LatticeParams) -> EigenPair:
    """Eigenvalues of the cell operator, growing root (``|lam| >= 1``) first."""
    c = _half_trace(k, p)
    s = cmath.sqrt(c * c - 1.0)
    lam = c + s if abs(c + s) >= abs(c - s) else c - s
    # the small root via the unit product avoids cancellation in c - s
    return EigenPair(lam, 1.0 / lam)


def closed_form_phi(k: float, p: LatticeParams) -> complex:
    """Transmission amplitude from the eigen-decomposition of the cell operator.

    Evaluated with ``lam^{-N}`` factored out of the denominator, in the log
    domain, so large ``N`` neither overflows nor underflows spuriously.
    """
    x = coupling_x(k, p)
    lam = cell_eigenvalues(k, p).lam
    n = p.n_imp
    th = k * p.b * p.j
    y = cmath.exp(-1j * th)
    yl = y * lam
    core = -2.0 + yl + 1.0 / yl - (yl - 1.0 / yl) * x
    log_lam = cmath.log(lam)
    inv_pow = cmath.exp(-n * log_lam)  # lam^{-N}, |.| <= 1
    inv_pow2 = cmath.exp(-2 * n * log_lam)
    den = (x * x + core) - inv_pow2 * x * x
    if den == 0 or not cmath.isfinite(den):
        raise NumericallyIllConditioned(f"closed form denominator vanishes at k={k!r}")
    return cmath.exp(-1j * th * n) * core * inv_pow / den


def asymptotic_params(p: LatticeParams) -> AsymptoticParams:
    if p.g == 0.0:
        raise InvalidParameter("g = 0 gives gamma = 0: no trapping to analyse")
    s = math.sin(p.m * math.pi / p.j)
    alpha = p.g * p.g * p.j / (4.0 * p.a * p.a * s * s)
    # arccosh(1 + alpha) = log1p(alpha + sqrt(alpha (alpha + 2))), accurate for small alpha
    gamma = math.log1p(alpha + math.sqrt(alpha * (alpha + 2.0)))
    return AsymptoticParams(alpha, gamma)


def decay_slope(p: LatticeParams, epsilon: float, n_range) -> float:
    """Least-squares slope of ``ln|phi(k_res + epsilon)|`` against N."""
    if p.g == 0.0:
        raise InvalidParameter("g = 0: transmission does not decay with N")
    ns = np.asarray(list(n_range), dtype=int)
    if ns.size < 2:
        raise InvalidParameter("need at least two impurity counts to fit a slope")
    if ns.min() < 5:
        raise InvalidParameter(f"impurity counts must be >= 5, got {ns.min()}")
    k_res = resonant_k(p)
    if not 0 < abs(epsilon) <= 1e-3 * k_res:
        raise InvalidParameter(
            f"epsilon must satisfy 0 < |epsilon| <= 1e-3 * k_res = {1e-3 * k_res:g}"
        )
    k = k_res + epsilon
    logs = np.array([log_abs_phi(k, p.with_(n_imp=int(n))) for n in ns])
    slope, _ = np.polyfit(ns.astype(float), logs, 1)
    return float(slope)


def dip_width(spec: Spectrum, threshold: float) -> DipMeasurement:
    """Contiguous k-interval around ``k_res`` with ``t_prob < threshold``.

    Edges are linearly interpolated between the last point inside and the
    first point outside; an interval running into the end of the grid stops
    at the last grid point.
    """
    if not 0 < threshold < 1:
        raise InvalidParameter(f"threshold must lie in (0, 1), got {threshold!r}")
    ks = spec.k
    k_res = resonant_k(spec.params)
    if ks.size == 0 or not ks[0] <= k_res <= ks[-1]:
        raise InvalidParameter(f"spectrum does not bracket k_res={k_res!r}")
    t = spec.t_prob
    i0 = int(np.argmin(np.abs(ks - k_res)))
    if t[i0] >= threshold:
        raise NoDip(f"t_prob={t[i0]:.3g} >= {threshold} at k={ks[i0]!r} nearest k_res")

    lo = i0
    while lo > 0 and t[lo - 1] < threshold:
        lo -= 1
    hi = i0
    while hi < ks.size - 1 and t[hi + 1] < threshold:
        hi += 1

    def cross(inside: int, outside: int) -> float:
        frac = (threshold - t[inside]) / (t[outside] - t[inside])
        return float(ks[inside] + frac * (ks[outside] - ks[inside]))

    k_low = cross(lo, lo - 1) if lo > 0 else float(ks[0])
    k_high = cross(hi, hi + 1) if hi < ks.size - 1 else float(ks[-1])
    return DipMeasurement(threshold, k_low, k_high)
