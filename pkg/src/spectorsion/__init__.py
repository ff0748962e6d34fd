"""Exact pointwise spectral torsion of rescaled Dirac operators."""

__version__ = "0.1.0"

from .clifford import CliffordElement, ThreeForm, gamma, mul, supertrace, trace  # noqa: E402
from .gaussian import GaussianRational  # noqa: E402
from .ledger import DiscrepancyLedger, ledger  # noqa: E402
from .point import PointData  # noqa: E402
from .torsion import TermReport, density, printed_terms, theorem_density  # noqa: E402

__all__ = [
    "CliffordElement", "DiscrepancyLedger", "GaussianRational", "PointData", "TermReport",
    "ThreeForm", "density", "gamma", "ledger", "mul", "printed_terms", "supertrace",
    "theorem_density", "trace",
]
