"""Negative (semi-)definiteness judged by the spectrum of the symmetric part."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from lyapstep.core.errors import DimensionMismatchError, NonFiniteStateError

DEFAULT_DEFINITENESS_TOL = 1e-10


class Definiteness(Enum):
    """Classification of a matrix by its symmetric part."""

    NEGATIVE_DEFINITE = "negative_definite"
    NEGATIVE_SEMIDEFINITE = "negative_semidefinite"
    INDEFINITE = "indefinite"

    @property
    def guarantees_decrease(self) -> bool:
        return self is not Definiteness.INDEFINITE


@dataclass(frozen=True)
class DefinitenessReport:
    classification: Definiteness
    max_sym_eigenvalue: float
    tolerance_used: float


def check_definiteness(M: Any, tol: float = DEFAULT_DEFINITENESS_TOL) -> DefinitenessReport:
    """Classify ``M`` from the eigenvalues of ``(M + M^T) / 2``.

    Skew-symmetric parts never change the result: ``x^T S x = 0``.
    """
    mat = np.atleast_2d(np.asarray(M, dtype=np.float64))
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatchError(f"Matrix must be square, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise NonFiniteStateError("Matrix contains non-finite entries")

    sym = 0.5 * (mat + mat.T)
    top = float(np.linalg.eigvalsh(sym)[-1])

    if top < -tol:
        kind = Definiteness.NEGATIVE_DEFINITE
    elif top <= tol:
        kind = Definiteness.NEGATIVE_SEMIDEFINITE
    else:
        kind = Definiteness.INDEFINITE
    return DefinitenessReport(classification=kind, max_sym_eigenvalue=top, tolerance_used=tol)
