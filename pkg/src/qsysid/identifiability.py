"""Indistinguishability tests and gauge recovery.

Two minimal systems share a transfer function exactly when a unitary change
of mode basis T maps one onto the other: omega2 = T omega1 T†, c2 = c1 T†.
Equality of the moment sequences c A^k c† (k <= 2n) certifies equal transfer
functions, and the moment sequence c omega^k c† gives the practical
identifiability test for parametrized families.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import observability_matrix, structure_report
from .errors import DimensionMismatch, NotMinimal, NotUnitary
from .model import PassiveSystem, drift_matrix, new_system

EQUIV_RTOL = 1e-8
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class MarkovSequence:
    """Moment matrices params[k] = c omega^k c†, each Hermitian m x m."""

    params: np.ndarray
    kmax: int


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of a transfer-function equivalence test.

    ``gauge`` holds the recovered unitary T when ``equivalent`` is true;
    ``residual`` is the largest deviation across all checked relations
    (unitarity of T and the two matrix relations).
    """

    equivalent: bool
    gauge: np.ndarray | None
    residual: float


def markov_sequence(sys: PassiveSystem, kmax: int) -> MarkovSequence:
    """Moments c omega^k c† for k = 0..kmax, by iterated multiplication."""
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    cdag = sys.c.conj().T
    params = np.empty((kmax + 1, sys.m, sys.m), dtype=complex)
    row = sys.c
    for k in range(kmax + 1):
        params[k] = row @ cdag
        row = row @ sys.omega
    return MarkovSequence(params=params, kmax=kmax)


def drift_moment_sequence(sys: PassiveSystem, kmax: int) -> np.ndarray:
    """Moments c A^k c† for k = 0..kmax, shape (kmax + 1, m, m).

    These are the large-s expansion coefficients of the transfer function,
    so equality up to k = 2n certifies equal transfer functions for
    minimal systems. Compare with :func:`markov_sequence`, which uses the
    Hamiltonian in place of the drift.
    """
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    a = drift_matrix(sys)
    cdag = sys.c.conj().T
    out = np.empty((kmax + 1, sys.m, sys.m), dtype=complex)
    row = sys.c
    for k in range(kmax + 1):
        out[k] = row @ cdag
        row = row @ a
    return out


def _max_dev(seq1: np.ndarray, seq2: np.ndarray) -> tuple[float, float]:
    dev = np.abs(seq1 - seq2).max()
    scale = max(np.abs(seq1).max(), np.abs(seq2).max())
    return float(dev), float(scale)


def markov_distinguishable(
    sys1: PassiveSystem,
    sys2: PassiveSystem,
    kmax: int | None = None,
    tol: float | None = None,
) -> bool:
    """True when some moment c omega^k c† differs between the systems.

    A False return at the default kmax = 2 max(n1, n2) certifies, for
    minimal systems, that the two transfer functions coincide.

    Parameters
    ----------
    tol : float, optional
        Absolute entry tolerance; defaults to 1e-8 times the largest
        moment magnitude across both sequences.
    """
    if sys1.m != sys2.m:
        raise DimensionMismatch(f"port counts differ: {sys1.m} vs {sys2.m}")
    if kmax is None:
        kmax = 2 * max(sys1.n, sys2.n)
    seq1 = markov_sequence(sys1, kmax).params
    seq2 = markov_sequence(sys2, kmax).params
    dev, scale = _max_dev(seq1, seq2)
    if tol is None:
        tol = EQUIV_RTOL * scale
    return dev > tol


def gauge_transform(sys: PassiveSystem, t: np.ndarray) -> PassiveSystem:
    """Change of mode basis: (omega, c) -> (T omega T†, c T†).

    Raises
    ------
    NotUnitary
        if max |T T† - I| exceeds 1e-10.
    """
    t = np.asarray(t, dtype=complex)
    if t.shape != (sys.n, sys.n):
        raise DimensionMismatch(f"gauge must be {sys.n} x {sys.n}, got {t.shape}")
    dev = np.abs(t @ t.conj().T - np.eye(sys.n)).max()
    if dev > UNITARY_TOL:
        raise NotUnitary(f"max |T T† - I| = {dev:.3e}")
    return new_system(t @ sys.omega @ t.conj().T, sys.c @ t.conj().T)


def find_gauge(
    sys1: PassiveSystem,
    sys2: PassiveSystem,
    tol: float | None = None,
) -> EquivalenceVerdict:
    """Decide equivalence of two minimal systems and recover the gauge.

    If the transfer functions agree (certified through the drift moment
    sequences up to k = 2n), the unique unitary is read off the
    observability relation O2 = O1 T† as T = (pinv(O1) O2)†, then verified
    against unitarity and both defining relations.

    Parameters
    ----------
    tol : float, optional
        Relative tolerance for every comparison; default 1e-8.

    Raises
    ------
    NotMinimal
        if either system is not minimal (the equivalence theorem's
        hypothesis).
    """
    if sys1.m != sys2.m:
        raise DimensionMismatch(f"port counts differ: {sys1.m} vs {sys2.m}")
    rtol = EQUIV_RTOL if tol is None else tol
    for name, sys in (("first", sys1), ("second", sys2)):
        if not structure_report(sys).minimal:
            raise NotMinimal(f"{name} system is not minimal")
    kmax = 2 * max(sys1.n, sys2.n)
    seq1 = drift_moment_sequence(sys1, kmax)
    seq2 = drift_moment_sequence(sys2, kmax)
    dev, scale = _max_dev(seq1, seq2)
    if sys1.n != sys2.n or dev > rtol * scale:
        return EquivalenceVerdict(equivalent=False, gauge=None, residual=dev)
    obs1 = observability_matrix(sys1)
    obs2 = observability_matrix(sys2)
    t = (np.linalg.pinv(obs1) @ obs2).conj().T
    dev_u = np.abs(t @ t.conj().T - np.eye(sys1.n)).max()
    dev_omega = np.abs(t @ sys1.omega @ t.conj().T - sys2.omega).max()
    dev_c = np.abs(sys1.c @ t.conj().T - sys2.c).max()
    scale_omega = max(np.abs(sys1.omega).max(), np.abs(sys2.omega).max(), 1e-300)
    scale_c = max(np.abs(sys1.c).max(), np.abs(sys2.c).max(), 1e-300)
    ok = (
        dev_u <= rtol
        and dev_omega <= rtol * scale_omega
        and dev_c <= rtol * scale_c
    )
    residual = float(max(dev_u, dev_omega, dev_c))
    return EquivalenceVerdict(equivalent=bool(ok), gauge=t if ok else None, residual=residual)
