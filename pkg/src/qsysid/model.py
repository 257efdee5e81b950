"""Passive linear quantum systems: model definition and input-output maps.

A system of n bosonic modes is specified by a Hermitian Hamiltonian matrix
``omega`` (n x n) and a coupling matrix ``c`` (m x n, m <= n) to m input
fields. The effective drift is A = -i*omega - c†c/2, mean dynamics follow

    d<a>/dt  = A <a> - c† beta(t),
    <b_out>  = c <a> + beta(t),

and the frequency-domain input-output map is Xi(s) = I - c (sI - A)^{-1} c†.
Xi(i*w) is unitary for every real w.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyGrid,
    NonMonotoneGrid,
    NotHermitian,
    SingularResolvent,
    TooManyFields,
)
from .ratfunc import RationalTF, poly_from_roots, polyval_asc

HERMIT_RTOL = 1e-12
HERMIT_ATOL = 1e-14
RESOLVENT_TOL = 1e-10


@dataclass(frozen=True)
class PassiveSystem:
    """Immutable pair (omega, c) defining a passive linear quantum system.

    Construct through :func:`new_system`, which validates shapes and
    Hermiticity. Instances are safe to share between threads.
    """

    omega: np.ndarray
    c: np.ndarray

    @property
    def n(self) -> int:
        """Mode count."""
        return self.omega.shape[0]

    @property
    def m(self) -> int:
        """Field (port) count."""
        return self.c.shape[0]


@dataclass(frozen=True)
class MeanTrajectory:
    """Sampled first-moment trajectories of a driven system.

    All per-instant arrays share the length of ``times``; ``input_means``
    and ``output_means`` are (len, m), ``system_means`` is (len, n).
    """

    times: np.ndarray
    input_means: np.ndarray
    system_means: np.ndarray
    output_means: np.ndarray


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


def new_system(omega, c) -> PassiveSystem:
    """Validate matrices and build a :class:`PassiveSystem`.

    Parameters
    ----------
    omega : (n, n) array_like
        Hermitian Hamiltonian matrix, units of angular frequency.
    c : (m, n) array_like
        Coupling matrix, units of sqrt(angular frequency).

    Raises
    ------
    DimensionMismatch
        omega not square, or column counts differ.
    TooManyFields
        more rows in c than modes (m > n).
    NotHermitian
        omega deviates from omega† beyond 1e-12 relative (1e-14 absolute
        floor) in max norm.
    """
    omega = np.atleast_2d(np.asarray(omega, dtype=complex))
    c = np.atleast_2d(np.asarray(c, dtype=complex))
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise DimensionMismatch(f"omega must be square, got shape {omega.shape}")
    n = omega.shape[0]
    if n < 1:
        raise DimensionMismatch("system needs at least one mode")
    if c.ndim != 2 or c.shape[1] != n:
        raise DimensionMismatch(f"c must have {n} columns, got shape {c.shape}")
    m = c.shape[0]
    if m < 1:
        raise DimensionMismatch("system needs at least one field")
    if m > n:
        raise TooManyFields(f"m={m} fields exceed n={n} modes")
    scale = np.abs(omega).max()
    tol = max(HERMIT_RTOL * scale, HERMIT_ATOL)
    dev = np.abs(omega - omega.conj().T).max()
    if dev > tol:
        raise NotHermitian(f"max |omega - omega†| = {dev:.3e} exceeds {tol:.3e}")
    return PassiveSystem(omega=_frozen(omega), c=_frozen(c))


def drift_matrix(sys: PassiveSystem) -> np.ndarray:
    """Drift matrix A = -i*omega - c†c/2. Satisfies A + A† + c†c = 0."""
    return -1j * sys.omega - 0.5 * (sys.c.conj().T @ sys.c)


def _check_resolvent_point(a: np.ndarray, s: complex) -> None:
    eigs = np.linalg.eigvals(a)
    gap = np.abs(eigs - s).min()
    if gap < RESOLVENT_TOL * (1.0 + abs(s)):
        raise SingularResolvent(f"s={s} is within {gap:.3e} of an eigenvalue of A")


def transfer_at(sys: PassiveSystem, s: complex) -> np.ndarray:
    """Transfer function Xi(s) = I - c (sI - A)^{-1} c† at one point.

    Raises
    ------
    SingularResolvent
        if s lies within 1e-10 * (1 + |s|) of an eigenvalue of A.
    """
    a = drift_matrix(sys)
    _check_resolvent_point(a, s)
    res = np.linalg.solve(s * np.eye(sys.n) - a, sys.c.conj().T)
    return np.eye(sys.m) - sys.c @ res


def transfer_rational(sys: PassiveSystem) -> RationalTF:
    """Exact rational form of the transfer function.

    The common denominator is the characteristic polynomial of A,
    reconstructed from its eigenvalues. Numerator coefficients are
    recovered by interpolating Xi(s) * den(s) on a circle of radius
    2 * (1 + spectral radius), where the interpolation nodes form a
    scaled DFT grid so the Vandermonde solve is an FFT.
    """
    a = drift_matrix(sys)
    n, m = sys.n, sys.m
    eigs = np.linalg.eigvals(a)
    den = poly_from_roots(eigs)
    radius = 2.0 * (1.0 + np.abs(eigs).max())
    npts = n + 1
    nodes = radius * np.exp(2j * np.pi * np.arange(npts) / npts)
    samples = np.empty((npts, m, m), dtype=complex)
    eye = np.eye(n)
    for k, s in enumerate(nodes):
        res = np.linalg.solve(s * eye - a, sys.c.conj().T)
        samples[k] = (np.eye(m) - sys.c @ res) * polyval_asc(den, s)
    num = np.fft.fft(samples, axis=0) / npts
    num /= (radius ** np.arange(npts))[:, None, None]
    num = np.moveaxis(num, 0, 2)
    return RationalTF(num=num, den=den, m=m)


def simulate_means(
    sys: PassiveSystem,
    beta: Callable[[float], np.ndarray],
    t_grid,
    initial_mean=None,
) -> MeanTrajectory:
    """Integrate the coherent-mean dynamics with fixed-step RK4.

    Parameters
    ----------
    sys : PassiveSystem
    beta : callable
        Input mean amplitude, mapping time to an m-vector (scalars are
        broadcast for m = 1).
    t_grid : array_like
        Strictly increasing sample instants; integration steps once per
        interval, no substepping.
    initial_mean : array_like, optional
        Mode means at t_grid[0]; defaults to the zero vector.

    Returns
    -------
    MeanTrajectory
        Input, mode and output means at every grid instant, with the
        output read out as <b_out> = c <a> + beta.
    """
    t = np.asarray(t_grid, dtype=float).ravel()
    if t.size < 2:
        raise EmptyGrid(f"need at least 2 time points, got {t.size}")
    if np.any(np.diff(t) <= 0):
        raise NonMonotoneGrid("time grid must be strictly increasing")
    a = drift_matrix(sys)
    n, m = sys.n, sys.m
    cdag = sys.c.conj().T

    def beta_vec(ti: float) -> np.ndarray:
        val = np.asarray(beta(ti), dtype=complex).reshape(-1)
        if val.size == 1 and m == 1:
            return val
        if val.size != m:
            raise DimensionMismatch(f"beta(t) must have length {m}, got {val.size}")
        return val

    def rhs(ti: float, x: np.ndarray) -> np.ndarray:
        return a @ x - cdag @ beta_vec(ti)

    x = np.zeros(n, dtype=complex) if initial_mean is None else np.asarray(
        initial_mean, dtype=complex
    ).reshape(n)
    sys_means = np.empty((t.size, n), dtype=complex)
    in_means = np.empty((t.size, m), dtype=complex)
    out_means = np.empty((t.size, m), dtype=complex)
    sys_means[0] = x
    in_means[0] = beta_vec(t[0])
    out_means[0] = sys.c @ x + in_means[0]
    for k in range(t.size - 1):
        h = t[k + 1] - t[k]
        k1 = rhs(t[k], x)
        k2 = rhs(t[k] + 0.5 * h, x + 0.5 * h * k1)
        k3 = rhs(t[k] + 0.5 * h, x + 0.5 * h * k2)
        k4 = rhs(t[k] + h, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        sys_means[k + 1] = x
        in_means[k + 1] = beta_vec(t[k + 1])
        out_means[k + 1] = sys.c @ x + in_means[k + 1]
    return MeanTrajectory(
        times=t.copy(),
        input_means=in_means,
        system_means=sys_means,
        output_means=out_means,
    )
