"""Rational matrix transfer functions over a common monic denominator.

Coefficients are stored in ascending degree order: ``den[k]`` multiplies
``s**k``. An m-port function keeps one numerator polynomial per (output,
input) entry in an ``(m, m, deg + 1)`` array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonMonic

MONIC_TOL = 1e-9


def polyval_asc(coeffs: np.ndarray, s: complex) -> complex:
    """Evaluate a polynomial given ascending coefficients."""
    return np.polynomial.polynomial.polyval(s, coeffs)


def poly_from_roots(roots: np.ndarray) -> np.ndarray:
    """Monic polynomial with the given roots, ascending coefficients."""
    return np.atleast_1d(np.poly(roots))[::-1].astype(complex)


def poly_roots(coeffs_asc: np.ndarray) -> np.ndarray:
    """Roots of a polynomial given ascending coefficients (companion eigenvalues)."""
    return np.roots(np.asarray(coeffs_asc, dtype=complex)[::-1])


@dataclass(frozen=True)
class RationalTF:
    """Matrix rational function num(s) / den(s).

    Attributes
    ----------
    num : ndarray, shape (m, m, deg + 1)
        Numerator coefficients per port pair, ascending degree.
    den : ndarray, shape (deg + 1,)
        Common denominator coefficients, ascending degree, monic.
    m : int
        Port count.
    """

    num: np.ndarray
    den: np.ndarray
    m: int

    @property
    def degree(self) -> int:
        return len(self.den) - 1

    def eval(self, s: complex) -> np.ndarray:
        """Value of the transfer function at one complex point, as an m x m matrix."""
        dval = polyval_asc(self.den, s)
        out = np.empty((self.m, self.m), dtype=complex)
        for i in range(self.m):
            for j in range(self.m):
                out[i, j] = polyval_asc(self.num[i, j], s) / dval
        return out

    def eval_scalar(self, s: complex) -> complex:
        """Convenience for single-port functions."""
        return polyval_asc(self.num[0, 0], s) / polyval_asc(self.den, s)


def make_rational_tf(num, den, m: int | None = None) -> RationalTF:
    """Validate and normalize raw coefficient arrays into a RationalTF.

    ``num`` may be a 1-D array for the single-port case or a full
    ``(m, m, deg + 1)`` array. The denominator must be monic within
    ``MONIC_TOL``; its leading coefficient is then snapped to exactly 1.
    """
    den = np.asarray(den, dtype=complex).ravel()
    num = np.asarray(num, dtype=complex)
    if num.ndim == 1:
        num = num.reshape(1, 1, -1)
    if num.ndim != 3 or num.shape[0] != num.shape[1]:
        raise DimensionMismatch(f"numerator array has shape {num.shape}")
    if m is None:
        m = num.shape[0]
    if num.shape[0] != m:
        raise DimensionMismatch(f"numerator is {num.shape[0]}-port, expected {m}")
    if len(den) < 2:
        raise NonMonic("denominator must have degree >= 1")
    if abs(den[-1] - 1.0) > MONIC_TOL * max(1.0, np.abs(den).max()):
        raise NonMonic(f"denominator leading coefficient {den[-1]} is not 1")
    den = den.copy()
    den[-1] = 1.0
    if num.shape[2] < len(den):
        pad = np.zeros((m, m, len(den) - num.shape[2]), dtype=complex)
        num = np.concatenate([num, pad], axis=2)
    elif num.shape[2] > len(den):
        extra = num[:, :, len(den):]
        if np.abs(extra).max() > 0:
            raise DimensionMismatch("numerator degree exceeds denominator degree")
        num = num[:, :, :len(den)]
    return RationalTF(num=num, den=den, m=m)
