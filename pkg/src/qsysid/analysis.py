"""Controllability, observability, minimality and stability tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import PassiveSystem, drift_matrix

RANK_RTOL = 1e-12


@dataclass(frozen=True)
class StructureReport:
    """Rank and stability summary of one system.

    ``minimal`` is controllable AND observable; for passive systems the two
    ranks always agree, and minimality implies ``hurwitz``.
    """

    controllable: bool
    observable: bool
    minimal: bool
    hurwitz: bool
    ctrb_rank: int
    obsv_rank: int
    spectral_abscissa: float


def controllability_matrix(sys: PassiveSystem) -> np.ndarray:
    """Horizontal stack -[c†, A c†, ..., A^n c†], shape (n, (n+1) m).

    One block more than Cayley-Hamilton needs; rank is unaffected.
    """
    a = drift_matrix(sys)
    block = sys.c.conj().T
    blocks = [block]
    for _ in range(sys.n):
        block = a @ block
        blocks.append(block)
    return -np.hstack(blocks)


def observability_matrix(sys: PassiveSystem) -> np.ndarray:
    """Vertical stack [c; cA; ...; cA^n], shape ((n+1) m, n).

    The testable condition for observability is full column rank (rank n).
    """
    a = drift_matrix(sys)
    block = sys.c
    blocks = [block]
    for _ in range(sys.n):
        block = block @ a
        blocks.append(block)
    return np.vstack(blocks)


def matrix_rank(mat: np.ndarray, rank_tol: float | None = None) -> int:
    """Numerical rank by singular-value thresholding.

    Default threshold: sigma_max * max(rows, cols) * 1e-12.
    """
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0:
        return 0
    if rank_tol is None:
        rank_tol = sv[0] * max(mat.shape) * RANK_RTOL
    return int(np.sum(sv > rank_tol))


def structure_report(sys: PassiveSystem, rank_tol: float | None = None) -> StructureReport:
    """Assemble the :class:`StructureReport` for one system.

    Parameters
    ----------
    sys : PassiveSystem
    rank_tol : float, optional
        Absolute singular-value threshold; defaults per :func:`matrix_rank`.
    """
    n = sys.n
    ctrb_rank = matrix_rank(controllability_matrix(sys), rank_tol)
    obsv_rank = matrix_rank(observability_matrix(sys), rank_tol)
    controllable = ctrb_rank == n
    observable = obsv_rank == n
    abscissa = float(np.linalg.eigvals(drift_matrix(sys)).real.max())
    return StructureReport(
        controllable=controllable,
        observable=observable,
        minimal=controllable and observable,
        hurwitz=abscissa < 0.0,
        ctrb_rank=ctrb_rank,
        obsv_rank=obsv_rank,
        spectral_abscissa=abscissa,
    )
