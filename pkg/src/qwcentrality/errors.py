"""Exception hierarchy.

Input problems derive from :class:`ValueError`; failures of a numerical
precondition (non-unitary matrices, divergent series, exhausted resampling)
derive from :class:`NumericalPreconditionError`.
"""


class UndefinedMeasureError(ValueError):
    """The requested quantity is not defined for this input."""


class NumericalPreconditionError(ArithmeticError):
    pass


class NonConvergentSeriesError(NumericalPreconditionError):
    pass


class GraphGenerationError(NumericalPreconditionError):
    """No random graph satisfying the constraints was produced within the retry budget."""


class NonUnitaryError(NumericalPreconditionError):
    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(f"matrix is not unitary: residual ||U^H U - I||_F = {residual:.3e} > {tol:.1e}")
