"""stabcert: machine-checkable stability and decomposition certificates for
even pair potentials on Z_n, Z, R and R^2.

The library decides, with certificates that can be re-checked from raw
values, whether a kernel's energy form is nonnegative on nonnegative
densities (stability / copositivity) and whether the kernel splits as
(nonnegative function) + (positive definite function), including the
golden-ratio counterexamples on Z_5 and their chain, continuum and planar
lifts.
"""

from .chain import (
    CutCertificate,
    alternating_potential,
    cut_certificate,
    energy,
    pairing,
    witness_measure,
)
from .common import GAMMA, InternalInconsistencyError, UnresolvedError
from .cones import (
    CopositivityVerdict,
    DecompositionCertificate,
    SeparatingCertificate,
    ThresholdScanResult,
    VertexSet,
    copositivity_verdict,
    correlation_bound_holds,
    decompose,
    dual_slice_vertices_z5,
    family_kernel_z5,
    is_nonnegative,
    is_positive_definite,
    threshold_scan,
)
from .continuum import (
    AtomicMeasure,
    BumpFunction,
    ContinuumPotential,
    energy_atomic,
    witness_pairing,
)
from .lattice import (
    Density,
    LatticePotential,
    Spectrum,
    autocorrelate,
    convolve,
    dft,
    inverse_dft,
    wrap,
)
from .plane2d import (
    CombParams,
    PeriodizedPotential,
    PlanePotential,
    QuadratureError,
    QuadratureSpec,
    ScanResult,
    divergence_scan,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "BumpFunction",
    "CombParams",
    "ContinuumPotential",
    "CopositivityVerdict",
    "CutCertificate",
    "DecompositionCertificate",
    "Density",
    "GAMMA",
    "InternalInconsistencyError",
    "LatticePotential",
    "PeriodizedPotential",
    "PlanePotential",
    "QuadratureError",
    "QuadratureSpec",
    "ScanResult",
    "SeparatingCertificate",
    "Spectrum",
    "ThresholdScanResult",
    "UnresolvedError",
    "VertexSet",
    "alternating_potential",
    "autocorrelate",
    "convolve",
    "copositivity_verdict",
    "correlation_bound_holds",
    "cut_certificate",
    "decompose",
    "dft",
    "divergence_scan",
    "dual_slice_vertices_z5",
    "energy",
    "energy_atomic",
    "family_kernel_z5",
    "inverse_dft",
    "is_nonnegative",
    "is_positive_definite",
    "pairing",
    "threshold_scan",
    "witness_measure",
    "witness_pairing",
    "wrap",
]
