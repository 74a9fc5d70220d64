"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands declare different numbers of variables or ranks."""


class ParseError(ValueError):
    """Polynomial expression rejected; `offset` is the byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class NotIsolatedError(ValueError):
    """A germ required to have an isolated singularity does not."""


class NotTangentError(ValueError):
    """A vector field claimed tangent to the hypersurface is not."""


class ContainmentError(ValueError):
    """Denominator module of a quotient is not contained in the numerator."""


class NonIcisError(ValueError):
    """The pair of germs does not cut out an isolated complete intersection."""


class NotFinitelyDeterminedError(ValueError):
    """The function germ is not finitely determined over the hypersurface."""


class InternalInconsistencyError(RuntimeError):
    """A bookkeeping invariant of the reduction machinery failed."""
