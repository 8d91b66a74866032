"""Lattice parameters and the elementary analytic relations of the chain.

The chain has on-site energy ``e0`` and nearest-neighbour hopping ``-a``.
Every ``j``-th site, starting at site 0, carries a side-coupled impurity with
on-site energy ``f`` and coupling ``-g``; there are ``n_imp`` of them.  Plane
waves ``x_m = exp(i k b m)`` have energy ``E(k) = e0 - 2 a cos(k b)``.

Units: energies share one arbitrary unit and hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidParameter, SingularAtBandEdge, SingularAtResonance

# |sin(k b)| below this counts as a band edge; float pi gives sin ~ 1e-16.
BAND_EDGE_TOL = 1e-12
# |E(k) - f| < RESONANCE_TOL * a counts as an exact hit of the impurity level.
RESONANCE_TOL = 1e-13


def _reject(name: str, constraint: str, value) -> None:
    raise InvalidParameter(f"{name} must satisfy {constraint}, got {value!r}", name, constraint, value)


@dataclass(frozen=True)
class LatticeParams:
    """Physical constants of the chain.

    Defaults are the reference set: N=22, e0=0, a=1, g=0.5, b=1, j=3, m=1.

    ``f=None`` resolves to the resonant impurity energy
    ``e0 - 2 a cos(m pi / j)``.
    """

    e0: float = 0.0
    a: float = 1.0
    g: float = 0.5
    f: float = field(default=None)  # type: ignore[assignment]
    b: float = 1.0
    j: int = 3
    n_imp: int = 22
    m: int = 1

    def __post_init__(self) -> None:
        for name in ("e0", "a", "g", "b"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                _reject(name, "real number", value)
            if not math.isfinite(value):
                _reject(name, "finite", value)
            object.__setattr__(self, name, float(value))
        for name in ("j", "n_imp", "m"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                _reject(name, "integer", value)
            object.__setattr__(self, name, int(value))
        if self.a <= 0:
            _reject("a", "a > 0", self.a)
        if self.b <= 0:
            _reject("b", "b > 0", self.b)
        if self.g < 0:
            _reject("g", "g >= 0", self.g)
        if self.j < 2:
            _reject("j", "j >= 2", self.j)
        if self.n_imp < 1:
            _reject("n_imp", "n_imp >= 1", self.n_imp)
        if not 0 < self.m < self.j:
            _reject("m", f"0 < m < j={self.j}", self.m)
        if self.f is None:
            object.__setattr__(self, "f", resonant_f(self))
        else:
            if isinstance(self.f, bool) or not isinstance(self.f, (int, float)):
                _reject("f", "real number", self.f)
            if not math.isfinite(self.f):
                _reject("f", "finite", self.f)
            object.__setattr__(self, "f", float(self.f))

    @classmethod
    def at_resonance(cls, **kwargs) -> "LatticeParams":
        kwargs.pop("f", None)
        return cls(**kwargs)

    @property
    def is_resonant(self) -> bool:
        return self.f == resonant_f(self)

    def with_(self, **changes) -> "LatticeParams":
        """Copy with fields replaced; a resonant ``f`` follows the new parameters."""
        if "f" not in changes and self.is_resonant:
            changes["f"] = None
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "e0": self.e0, "a": self.a, "g": self.g, "f": self.f,
            "b": self.b, "j": self.j, "n_imp": self.n_imp, "m": self.m,
        }


def dispersion(k, p: LatticeParams):
    """Band energy ``E(k) = e0 - 2 a cos(k b)``; accepts scalars or arrays."""
    if np.ndim(k) == 0:
        return p.e0 - 2.0 * p.a * math.cos(k * p.b)
    return p.e0 - 2.0 * p.a * np.cos(np.asarray(k, dtype=float) * p.b)


def _check_m(p: LatticeParams) -> None:
    if not 0 < p.m < p.j:
        _reject("m", f"0 < m < j={p.j}", p.m)


def resonant_f(p: LatticeParams) -> float:
    _check_m(p)
    return p.e0 - 2.0 * p.a * math.cos(p.m * math.pi / p.j)


def resonant_k(p: LatticeParams) -> float:
    """Wavenumber of the bound state in the continuum, ``m pi / (b j)``."""
    _check_m(p)
    return p.m * math.pi / (p.b * p.j)


def at_band_edge(k: float, p: LatticeParams) -> bool:
    return abs(math.sin(k * p.b)) < BAND_EDGE_TOL


def at_resonance(k: float, p: LatticeParams) -> bool:
    return p.g != 0.0 and abs(dispersion(k, p) - p.f) < RESONANCE_TOL * p.a


def coupling_x(k: float, p: LatticeParams) -> complex:
    """Impurity strength ``X = g^2 / (a (E - f) 2i sin(k b))``.

    Purely imaginary for real input.  Raises ``SingularAtBandEdge`` when
    ``sin(k b) = 0`` and ``SingularAtResonance`` when ``E(k) = f``.
    """
    if at_band_edge(k, p):
        raise SingularAtBandEdge(k)
    if p.g == 0.0:
        return 0j
    if at_resonance(k, p):
        raise SingularAtResonance(k)
    # 1 / (2i s) = -i / (2 s): build the imaginary part directly so Re(X) == 0.
    denom = 2.0 * p.a * (dispersion(k, p) - p.f) * math.sin(k * p.b)
    return complex(0.0, -(p.g * p.g) / denom)


def coupling_x_array(k: np.ndarray, p: LatticeParams) -> np.ndarray:
    """Vectorised ``coupling_x`` for points already known to be regular."""
    k = np.asarray(k, dtype=float)
    if p.g == 0.0:
        return np.zeros(k.shape, dtype=np.complex128)
    denom = 2.0 * p.a * (dispersion(k, p) - p.f) * np.sin(k * p.b)
    return (-(p.g * p.g) / denom) * 1j
