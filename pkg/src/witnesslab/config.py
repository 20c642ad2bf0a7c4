"""Central numerical tolerances.

All modules read tolerances from the single ``TOL`` instance so tests (or the
CLI via the ``WITNESSLAB_TOL`` environment variable) can tighten them in one
place.
"""

from dataclasses import dataclass


@dataclass
class Tolerances:
    # elementwise absolute tolerance for matrix equality / hermiticity checks
    tol_eq: float = 1e-10
    # how far below zero an eigenvalue may sit and still count as PSD
    psd_tol: float = 1e-9


TOL = Tolerances()
