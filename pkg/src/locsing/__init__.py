"""Singularity invariants of isolated hypersurface germs, exactly.

The package computes Milnor and Tjurina numbers, ICIS Milnor numbers,
Bruce-Roberts numbers through four independent routes, top polar
multiplicities, Euler obstructions and Morsification counts, all by exact
rational standard-basis computations in the local ring at the origin, with
an independent jet-truncation oracle for cross-validation.
"""

from .errors import (
    ContainmentError,
    DimensionMismatch,
    NonIcisError,
    NotFinitelyDeterminedError,
    NotIsolatedError,
    NotTangentError,
    ParseError,
)
from .parser import parse_polynomial
from .poly import (
    LOCAL_ORDER,
    LocalOrder,
    Polynomial,
    PolyVector,
    ecart,
    jacobian_minor,
    leading_term,
    partial_derivative,
    render_polynomial,
)
from .standard_basis import (
    INFINITE,
    IdealPresentation,
    SubmodulePresentation,
    colength,
    ideal_membership,
    is_finite,
    module_colength,
    module_membership,
    mora_reduce,
    quotient_dimension,
    syzygies,
    vector_syzygies,
)

__version__ = "0.1.0"
