"""Scattering off a tight-binding chain with periodically side-coupled impurities."""

from .asymptotics import (
    AsymptoticParams,
    DipMeasurement,
    EigenPair,
    asymptotic_params,
    cell_eigenvalues,
    closed_form_phi,
    decay_slope,
    dip_width,
)
from .errors import (
    EmptyRange,
    InvalidParameter,
    LatticeTooShort,
    MissingColumn,
    NoDip,
    NumericallyIllConditioned,
    PacketOutOfBounds,
    QuasiboundError,
    SingularAtBandEdge,
    SingularAtResonance,
    SingularSystem,
)
from .model import LatticeParams, coupling_x, dispersion, resonant_f, resonant_k
from .oracle import assemble, solve, spectrum_oracle
from .transfer import (
    ScatteringPoint,
    Spectrum,
    impurity_matrix,
    propagation_matrix,
    scattering_amplitudes,
    sweep,
    total_transfer,
)
from .wavepacket import build_lattice, evolve, gaussian_packet, trapped_fraction

__version__ = "0.1.0"

__all__ = [
    "assemble",
    "asymptotic_params",
    "AsymptoticParams",
    "build_lattice",
    "cell_eigenvalues",
    "closed_form_phi",
    "coupling_x",
    "decay_slope",
    "dip_width",
    "DipMeasurement",
    "dispersion",
    "EigenPair",
    "EmptyRange",
    "evolve",
    "gaussian_packet",
    "impurity_matrix",
    "InvalidParameter",
    "LatticeParams",
    "LatticeTooShort",
    "MissingColumn",
    "NoDip",
    "NumericallyIllConditioned",
    "PacketOutOfBounds",
    "propagation_matrix",
    "QuasiboundError",
    "resonant_f",
    "resonant_k",
    "scattering_amplitudes",
    "ScatteringPoint",
    "SingularAtBandEdge",
    "SingularAtResonance",
    "SingularSystem",
    "solve",
    "Spectrum",
    "spectrum_oracle",
    "sweep",
    "total_transfer",
    "trapped_fraction",
]

