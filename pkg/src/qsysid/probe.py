"""Simulated probing: noisy frequency response, rational fit, reconstruction.

The probing experiment samples Xi(i w_j) with additive complex Gaussian
noise, fits a rational function by iteratively reweighted linear least
squares, and hands the fit to the realization stage to recover physical
parameters. Randomness comes from numpy's default PCG64 generator seeded
explicitly, so every dataset is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    IllConditioned,
    InsufficientData,
    NonMonotoneGrid,
    NotSISO,
    NotStable,
)
from .model import PassiveSystem, drift_matrix, transfer_at
from .ratfunc import RationalTF, make_rational_tf, polyval_asc
from .realization import (
    CanonicalParams,
    companion_realization,
    direct_reconstruction,
    reconstruct_passive,
)

MAX_SK_ITERATIONS = 20
SK_COEFF_TOL = 1e-10
CONDITION_LIMIT = 1e12
NOISE_TOL_FACTOR = 100.0


@dataclass(frozen=True)
class ProbeDataset:
    """Sampled frequency response.

    ``responses[j]`` is the measured m x m matrix at ``freqs[j]`` (rad/s);
    ``noise_sigma`` is the per-component Gaussian standard deviation used
    to generate it.
    """

    freqs: np.ndarray
    responses: np.ndarray
    noise_sigma: float
    seed: int | None = None

    @property
    def m(self) -> int:
        return self.responses.shape[1]


@dataclass(frozen=True)
class FitResult:
    """Fitted rational function with its root-mean-square residual."""

    tf: RationalTF
    rms_residual: float
    iterations: int


def sample_response(
    sys: PassiveSystem,
    freqs,
    noise_sigma: float = 0.0,
    seed: int = 0,
) -> ProbeDataset:
    """Sample Xi(i w) on a frequency grid with additive Gaussian noise.

    Noise is i.i.d. complex Gaussian per matrix entry, with ``noise_sigma``
    the standard deviation of each real component. Identical seeds give
    identical datasets.

    Raises
    ------
    NotStable
        drift matrix is not Hurwitz.
    NonMonotoneGrid
        frequencies not strictly increasing.
    """
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be nonnegative")
    freqs = np.asarray(freqs, dtype=float).ravel()
    if freqs.size == 0 or np.any(np.diff(freqs) <= 0):
        raise NonMonotoneGrid("frequencies must be strictly increasing")
    abscissa = np.linalg.eigvals(drift_matrix(sys)).real.max()
    if abscissa >= 0:
        raise NotStable(f"spectral abscissa {abscissa:.3e} is not negative")
    responses = np.empty((freqs.size, sys.m, sys.m), dtype=complex)
    for j, w in enumerate(freqs):
        responses[j] = transfer_at(sys, 1j * w)
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        shape = responses.shape
        responses = responses + noise_sigma * (
            rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        )
    return ProbeDataset(
        freqs=freqs, responses=responses, noise_sigma=float(noise_sigma), seed=seed
    )


def fit_rational(data: ProbeDataset, degree: int) -> FitResult:
    """Fit a degree-n rational function to single-port response samples.

    Iteratively reweighted linear least squares: each pass solves for
    numerator and denominator coefficients minimizing

        sum_j w_j |num(i w_j) - response_j * den(i w_j)|^2

    with weights 1 / |den_prev(i w_j)|^2, den constrained monic, starting
    from the prior denominator (s / wref + 1)^n. The frequencies are
    rescaled by their geometric mean wref before building the design
    matrix, which keeps the powers balanced; coefficients are scaled back
    afterwards. Iteration stops after 20 passes or when the relative
    coefficient change drops below 1e-10. Coefficients stay complex; no
    conjugate symmetry is imposed.

    Raises
    ------
    NotSISO
    InsufficientData
        fewer than 2 (2 degree + 1) samples.
    IllConditioned
        normal-equation condition number above 1e12 (bad frequency grid).
    """
    if data.m != 1:
        raise NotSISO(f"fit requires single-port data, got m = {data.m}")
    n = int(degree)
    if n < 1:
        raise ValueError("degree must be >= 1")
    nfreq = data.freqs.size
    if nfreq < 2 * (2 * n + 1):
        raise InsufficientData(
            f"{nfreq} samples for degree {n}; need at least {2 * (2 * n + 1)}"
        )
    resp = data.responses[:, 0, 0]
    wref = np.exp(np.mean(np.log(np.abs(data.freqs[data.freqs != 0.0]))))
    if not np.isfinite(wref) or wref == 0.0:
        wref = 1.0
    z = 1j * data.freqs / wref
    powers = z[:, None] ** np.arange(n + 1)[None, :]
    coeffs = np.zeros(2 * n + 1, dtype=complex)
    # start from the prior denominator (z + 1)^n so the first pass is
    # weighted like the converged ones; iteration refines from there
    weights = 1.0 / np.abs(z + 1.0) ** n
    iterations = 0
    for iteration in range(1, MAX_SK_ITERATIONS + 1):
        iterations = iteration
        design = np.hstack([powers, -resp[:, None] * powers[:, :n]])
        rhs = resp * z**n
        wdesign = weights[:, None] * design
        # equilibrate columns before judging the grid; the solution is
        # rescaled back, so only the conditioning changes
        colnorm = np.linalg.norm(wdesign, axis=0)
        colnorm[colnorm == 0.0] = 1.0
        wdesign = wdesign / colnorm[None, :]
        cond = np.linalg.cond(wdesign)
        if cond**2 > CONDITION_LIMIT:
            raise IllConditioned(
                f"normal-equation condition {cond**2:.3e} exceeds {CONDITION_LIMIT:.1e}"
            )
        solution = np.linalg.lstsq(wdesign, weights * rhs, rcond=None)[0] / colnorm
        change = np.linalg.norm(solution - coeffs)
        scale = max(np.linalg.norm(solution), 1e-300)
        coeffs = solution
        den_scaled = np.concatenate([coeffs[n + 1 :], [1.0]])
        weights = 1.0 / np.maximum(np.abs(polyval_asc(den_scaled, z)), 1e-300)
        if change <= SK_COEFF_TOL * scale:
            break
    unscale = wref ** (n - np.arange(n + 1))
    num = coeffs[: n + 1] * unscale
    den = np.concatenate([coeffs[n + 1 :], [1.0]]) * unscale
    tf = make_rational_tf(num, den)
    fitted = np.array([tf.eval_scalar(1j * w) for w in data.freqs])
    rms = float(np.sqrt(np.mean(np.abs(fitted - resp) ** 2)))
    return FitResult(tf=tf, rms_residual=rms, iterations=iterations)


def identify_pipeline(
    data: ProbeDataset, degree: int
) -> tuple[PassiveSystem, CanonicalParams, FitResult]:
    """Full identification chain: fit, realize, reconstruct.

    Runs :func:`fit_rational`, builds the companion realization, recovers
    a passive system through the Lyapunov gauge, and extracts the
    canonical parameters directly from the fitted coefficients. The
    passivity and residue tolerances are loosened in proportion to the fit
    residual, since a noisy estimate is only approximately passive.

    Raises errors from any stage unchanged, including NotPassiveTF when
    the fitted function is not consistent with a passive system at the
    loosened tolerance.
    """
    fit = fit_rational(data, degree)
    tol = max(1e-7, NOISE_TOL_FACTOR * fit.rms_residual)
    realization = companion_realization(fit.tf, tol=tol)
    sys, _ = reconstruct_passive(realization, passivity_tol=tol)
    params = direct_reconstruction(fit.tf, tol=tol)
    return sys, params, fit
