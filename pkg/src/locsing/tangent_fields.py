"""Vector fields tangent to a hypersurface germ X = phi^{-1}(0).

Two modules matter.  The trivially tangent fields are generated by
phi * d/dx_i together with the Hamiltonian pairs built from two partials of
phi; both families annihilate phi modulo <phi> by construction.  The full
tangent module consists of all fields xi with d(phi)(xi) in <phi>; for phi
with isolated singularity this is exactly the projection to the first n
coordinates of the syzygies of (dphi/dx_1, ..., dphi/dx_n, phi).

Evaluating the differential of a second germ f on either module produces the
ideals whose colengths drive every invariant downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch, NotIsolatedError, NotTangentError
from .poly import Polynomial, PolyVector, gradient, jacobian_minor
from .standard_basis import (
    INFINITE,
    IdealPresentation,
    ideal_membership,
    is_finite,
    mora_reduce_with_witness,
    vector_syzygies,
)

VectorField = PolyVector  # rank must equal the ambient dimension


@dataclass(frozen=True)
class TangentModulePair:
    """A hypersurface germ with its trivial and full tangent generator lists."""

    phi: Polynomial
    trivial_gens: tuple[VectorField, ...]
    full_gens: tuple[VectorField, ...]


def apply_differential(f: Polynomial, xi: VectorField) -> Polynomial:
    """df(xi) = sum_i xi_i * df/dx_i."""
    if xi.rank != f.n:
        raise DimensionMismatch("field rank does not match variable count")
    acc = Polynomial.zero(f.n)
    for i, comp in enumerate(xi.components):
        if comp:
            acc = acc + comp * f.diff(i)
    return acc


@lru_cache(maxsize=256)
def _trivial_generators(phi: Polynomial) -> tuple[VectorField, ...]:
    n = phi.n
    grads = gradient(phi)
    fields = []
    for i in range(n):
        comps = [Polynomial.zero(n) for _ in range(n)]
        comps[i] = phi
        fields.append(PolyVector(comps))
    for j in range(n):
        for k in range(j + 1, n):
            comps = [Polynomial.zero(n) for _ in range(n)]
            comps[j] = grads[k]
            comps[k] = -grads[j]
            fields.append(PolyVector(comps))
    return tuple(fields)


def trivial_generators(phi: Polynomial) -> list[VectorField]:
    """The n fields phi*d/dx_i plus the n(n-1)/2 Hamiltonian pairs."""
    if not phi:
        raise ValueError("phi must be nonzero")
    return list(_trivial_generators(phi))


@lru_cache(maxsize=256)
def _theta_x(phi: Polynomial) -> tuple[VectorField, ...]:
    n = phi.n
    jac = IdealPresentation(gradient(phi))
    if not is_finite(jac.colength()):
        raise NotIsolatedError("phi does not have an isolated singularity")
    syz = vector_syzygies([PolyVector([g]) for g in gradient(phi)] + [PolyVector([phi])])
    gens: list[VectorField] = []
    seen = set()
    for v in syz:
        head = PolyVector(v.components[:n])
        if head and head not in seen:
            seen.add(head)
            gens.append(head)
    for t in _trivial_generators(phi):
        if t not in seen:
            seen.add(t)
            gens.append(t)
    return tuple(gens)


def theta_x(phi: Polynomial) -> list[VectorField]:
    """Generators of the module of vector fields tangent to phi^{-1}(0).

    Requires a finite Milnor number; smooth germs (mu = 0) are allowed.  The
    returned list is the projected syzygy generators followed by any trivial
    generators not already among them.
    """
    if not phi:
        raise ValueError("phi must be nonzero")
    if phi.constant_term():
        raise ValueError("phi must vanish at the origin")
    return list(_theta_x(phi))


def tangent_module_pair(phi: Polynomial) -> TangentModulePair:
    return TangentModulePair(phi, tuple(trivial_generators(phi)), tuple(theta_x(phi)))


def df_ideal(f: Polynomial, fields: Sequence[VectorField]) -> IdealPresentation:
    """Ideal generated by df(xi) for xi in the given fields."""
    return IdealPresentation([apply_differential(f, xi) for xi in fields])


def df_trivial_ideal(f: Polynomial, phi: Polynomial) -> IdealPresentation:
    """The closed form <phi * df/dx_i> + J(f, phi), bypassing field construction."""
    f._check(phi)
    n = f.n
    gens = [phi * f.diff(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            gens.append(jacobian_minor(f, phi, i, j))
    return IdealPresentation(gens)


def is_trivial_field(xi: VectorField, phi: Polynomial) -> bool:
    """Whether a tangent field lies in the trivially tangent submodule.

    Writes d(phi)(xi) = lambda * phi by local division and tests lambda
    against the Jacobian ideal of phi; errors when xi is not tangent.
    """
    if xi.rank != phi.n:
        raise DimensionMismatch("field rank does not match variable count")
    g = apply_differential(phi, xi)
    if not g:
        return True
    r, _, quotients = mora_reduce_with_witness(g, [phi])
    if r:
        raise NotTangentError("d(phi)(xi) is not a multiple of phi")
    # u*g = a*phi with u a unit, so lambda = a/u; membership in J(phi) is
    # unaffected by the unit.
    return ideal_membership(quotients[0], IdealPresentation(gradient(phi)))
