"""Exception hierarchy for qsysid.

Every domain failure raises a subclass of :class:`QsysidError`, so callers
(and the CLI) can distinguish domain errors from usage or I/O errors with a
single except clause.
"""


class QsysidError(Exception):
    """Base class for all domain errors raised by this package."""


class NotHermitian(QsysidError):
    """Hamiltonian matrix deviates from its own conjugate transpose."""


class DimensionMismatch(QsysidError):
    """Matrix or vector shapes are incompatible."""


class TooManyFields(QsysidError):
    """More field channels than system modes (m > n)."""


class SingularResolvent(QsysidError):
    """Evaluation point coincides with an eigenvalue of the drift matrix."""


class EmptyGrid(QsysidError):
    """Time grid has fewer than two points."""


class NonMonotoneGrid(QsysidError):
    """Grid values are not strictly increasing."""


class NotUnitary(QsysidError):
    """Matrix fails the unitarity tolerance."""


class NotMinimal(QsysidError):
    """System is not both controllable and observable."""


class NotSISO(QsysidError):
    """Operation requires a single-input single-output transfer function."""


class NonMonic(QsysidError):
    """Denominator polynomial is not monic."""


class NotHurwitz(QsysidError):
    """Matrix has an eigenvalue with nonnegative real part."""


class SolverSingular(QsysidError):
    """Linear-algebra stage produced a singular or indefinite result."""


class NotPassiveTF(QsysidError):
    """Transfer function is not realizable by a passive quantum system."""


class DegenerateSpectrum(QsysidError):
    """Repeated poles where simple poles are required."""


class NegativeResidue(QsysidError):
    """A residue that must be positive real is not."""


class RankDeficientCoupling(QsysidError):
    """Leading moment of the transfer function is singular."""


class InvalidNetwork(QsysidError):
    """Network description violates a structural invariant."""


class NotStable(QsysidError):
    """System drift matrix is not Hurwitz; steady probing is undefined."""


class InsufficientData(QsysidError):
    """Not enough samples for the requested fit order."""


class IllConditioned(QsysidError):
    """Fit normal equations exceed the conditioning limit."""
