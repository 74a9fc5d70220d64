"""Singularity invariants of a hypersurface germ and a function on it.

The central identity verified by this package expresses the Bruce-Roberts
number of f with respect to X = phi^{-1}(0) through classical invariants:

    brn(f, X) = mu(f) + mu(phi, f) + mu(X) - tau(X)

whenever f is finitely determined over X.  Four independent routes compute
it here: the defining colength over the full tangent module, the colength
over the trivially tangent fields minus tau, the closed formula above, and
a hyperplane-section route through <f> + J(f, phi).  The Tjurina number is
additionally recomputed as the dimension of the tangent-module quotient and
through evaluations on arbitrary nonzero linear forms, and the top polar
multiplicity feeds the Euler obstruction and the Morsification count.

Every colength that enters a report is recorded with its generators so the
jet oracle can replay it independently.
"""

from __future__ import annotations

import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    DimensionMismatch,
    NonIcisError,
    NotFinitelyDeterminedError,
    NotIsolatedError,
)
from .poly import Polynomial, PolyVector, gradient, jacobian_minor, render_polynomial
from .standard_basis import (
    INFINITE,
    IdealPresentation,
    SubmodulePresentation,
    is_finite,
    quotient_presentation,
)
from .tangent_fields import (
    apply_differential,
    df_ideal,
    df_trivial_ideal,
    theta_x,
    trivial_generators,
)

DEFAULT_SEED = 0
DEFAULT_DRAWS = 8


class _Undefined:
    """Marker for an invariant whose preconditions failed upstream."""

    __slots__ = ()

    def __repr__(self):
        return "UNDEFINED"

    def __eq__(self, other):
        return isinstance(other, _Undefined)

    def __hash__(self):
        return hash("UNDEFINED")


UNDEFINED = _Undefined()


@dataclass(frozen=True)
class GermPair:
    """One problem instance: variables, the hypersurface germ, the function."""

    vars: tuple[str, ...]
    phi: Polynomial
    f: Polynomial

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be distinct")
        if self.phi.n != len(self.vars) or self.f.n != len(self.vars):
            raise DimensionMismatch("germ does not match the variable list")
        if self.phi.constant_term() or self.f.constant_term():
            raise ValueError("phi and f must vanish at the origin")
        if not self.phi:
            raise ValueError("phi must be nonzero")


@dataclass(frozen=True)
class ColengthRecord:
    """A colength together with the generators that defined it, for replay."""

    label: str
    kind: str  # "ideal" or "module"
    generators: tuple
    rank: int
    value: object


@dataclass
class InvariantReport:
    """All invariants of one germ pair plus cross-route consistency flags."""

    mu_f: object = UNDEFINED
    mu_X: object = UNDEFINED
    tau_X: object = UNDEFINED
    mu_icis: object = UNDEFINED
    br_direct: object = UNDEFINED
    br_trivial_route: object = UNDEFINED
    br_formula: object = UNDEFINED
    br_section_route: object = UNDEFINED
    theta_quotient: object = UNDEFINED
    polar_mult: object = UNDEFINED
    euler_obstruction: object = UNDEFINED
    morsification_N: object = UNDEFINED
    finitely_determined: bool = False
    routes_agree: bool = False
    weighted_homogeneous_hint: bool = False
    polar_form: str | None = None
    records: list[ColengthRecord] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# basic invariants
# ---------------------------------------------------------------------------


def _check_vanishing(f: Polynomial):
    if f.constant_term():
        raise ValueError("germ must vanish at the origin")


@lru_cache(maxsize=1024)
def milnor_number(f: Polynomial):
    """Colength of the Jacobian ideal; INFINITE for a non-isolated singularity."""
    _check_vanishing(f)
    return IdealPresentation(gradient(f)).colength()


@lru_cache(maxsize=1024)
def tjurina_number(phi: Polynomial):
    """Colength of <phi> + J(phi)."""
    _check_vanishing(phi)
    return IdealPresentation([phi] + gradient(phi)).colength()


def _minor_list(f: Polynomial, phi: Polynomial) -> list[Polynomial]:
    n = f.n
    return [jacobian_minor(f, phi, i, j) for i in range(n) for j in range(i + 1, n)]


def icis_ideal(phi: Polynomial, f: Polynomial) -> IdealPresentation:
    """<phi> + J(f, phi), whose colength is mu(phi) + mu(phi, f)."""
    f._check(phi)
    return IdealPresentation([phi] + _minor_list(f, phi))


def icis_milnor(phi: Polynomial, f: Polynomial):
    """Milnor number of the complete-intersection pair, via the known colength."""
    mu = milnor_number(phi)
    if not is_finite(mu):
        raise NotIsolatedError("phi does not have an isolated singularity")
    total = icis_ideal(phi, f).colength()
    if not is_finite(total):
        raise NonIcisError("(phi, f) is not an isolated complete intersection")
    return total - mu


# ---------------------------------------------------------------------------
# the four routes
# ---------------------------------------------------------------------------


def br_direct(g: GermPair):
    """Defining colength over the full tangent module; INFINITE iff f is not
    finitely determined over X."""
    return df_ideal(g.f, theta_x(g.phi)).colength()


def br_via_trivial(g: GermPair):
    """Trivial-field colength minus tau(X)."""
    c = df_trivial_ideal(g.f, g.phi).colength()
    if not is_finite(c):
        raise NotFinitelyDeterminedError("infinite colength over the trivial fields")
    tau = tjurina_number(g.phi)
    if not is_finite(tau):
        raise NotIsolatedError("tau(X) is infinite")
    return c - tau


def br_via_formula(g: GermPair):
    """mu(f) + mu(phi, f) + mu(X) - tau(X); all four summands must be finite."""
    mu_f = milnor_number(g.f)
    mu_x = milnor_number(g.phi)
    tau = tjurina_number(g.phi)
    if not (is_finite(mu_f) and is_finite(mu_x) and is_finite(tau)):
        raise NotIsolatedError("a summand of the formula is infinite")
    return mu_f + icis_milnor(g.phi, g.f) + mu_x - tau


def section_ideal(phi: Polynomial, f: Polynomial) -> IdealPresentation:
    """<f> + J(f, phi)."""
    return IdealPresentation([f] + _minor_list(f, phi))


def br_via_section(g: GermPair):
    """colength(<f> + J(f, phi)) + mu(X) - tau(X)."""
    c = section_ideal(g.phi, g.f).colength()
    if not is_finite(c):
        raise NotFinitelyDeterminedError("infinite section colength")
    mu_x = milnor_number(g.phi)
    tau = tjurina_number(g.phi)
    if not (is_finite(mu_x) and is_finite(tau)):
        raise NotIsolatedError("mu(X) or tau(X) is infinite")
    return c + mu_x - tau


def is_finitely_determined(g: GermPair) -> bool:
    """Finite determinacy over X, decided on the trivial-field colength."""
    return is_finite(df_trivial_ideal(g.f, g.phi).colength())


# ---------------------------------------------------------------------------
# Tjurina via tangent modules
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _theta_quotient(phi: Polynomial):
    pre = quotient_presentation(theta_x(phi), trivial_generators(phi))
    return pre.colength(), tuple(pre.generators), pre.rank


def theta_quotient_dim(phi: Polynomial):
    """dim Theta_X / Theta_X^T; contracted to equal tau(X)."""
    value, _, _ = _theta_quotient(phi)
    return value


def tjurina_via_linear(phi: Polynomial, p: Polynomial):
    """dim dp(Theta_X)/dp(Theta_X^T) for a nonzero linear form p.

    Computed intrinsically as a quotient of rank-1 submodules, so it is
    well-defined even when dp(Theta_X^T) has infinite colength.
    """
    if not p or any(sum(m) != 1 for m in p.terms):
        raise ValueError("p must be a nonzero linear form")
    fields = theta_x(phi)
    numer = [PolyVector([apply_differential(p, xi)]) for xi in fields]
    denom = [PolyVector([apply_differential(p, xi)]) for xi in trivial_generators(phi)]
    return quotient_presentation(numer, denom).colength()


# ---------------------------------------------------------------------------
# polar multiplicity, Euler obstruction, Morsification count
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolarResult:
    value: int
    form: Polynomial
    ideal: IdealPresentation
    attained: int
    widened: bool


def polar_ideal(phi: Polynomial, p: Polynomial) -> IdealPresentation:
    """<phi> + J(p, phi) for a linear projection p."""
    return IdealPresentation([phi] + _minor_list(p, phi))


def _draw_form(n: int, rng: random.Random) -> Polynomial:
    while True:
        coeffs = [rng.randint(-9, 9) for _ in range(n)]
        if any(coeffs):
            t = {}
            for i, c in enumerate(coeffs):
                if c:
                    e = [0] * n
                    e[i] = 1
                    t[tuple(e)] = Fraction(c)
            return Polynomial(n, t)


def polar_multiplicity(phi: Polynomial, draws: int = DEFAULT_DRAWS,
                       rng: random.Random | None = None) -> PolarResult:
    """Top polar multiplicity: minimal colength of <phi> + J(p, phi) over
    random integer linear forms p.

    Upper semicontinuity makes the generic value the minimum.  The minimum
    must be attained at least twice among the draws; otherwise the number of
    draws is doubled once and a warning is issued.  No genericity
    certificate is claimed.
    """
    if draws < 2:
        raise ValueError("draws must be at least 2")
    mu = milnor_number(phi)
    if not is_finite(mu):
        raise NotIsolatedError("phi does not have an isolated singularity")
    if rng is None:
        rng = random.Random(DEFAULT_SEED)

    def run(count):
        results = []
        for _ in range(count):
            p = _draw_form(phi.n, rng)
            ideal = polar_ideal(phi, p)
            results.append((ideal.colength(), p, ideal))
        return results

    results = run(draws)
    widened = False
    finite = [r for r in results if is_finite(r[0])]
    best = min((r[0] for r in finite), default=None)
    if best is None or sum(1 for r in finite if r[0] == best) < 2:
        widened = True
        results += run(draws)
        finite = [r for r in results if is_finite(r[0])]
        best = min((r[0] for r in finite), default=None)
        if best is None:
            raise RuntimeError("every draw produced an infinite colength")
        if sum(1 for r in finite if r[0] == best) < 2:
            warnings.warn("polar multiplicity minimum attained only once; "
                          "value may be non-generic", stacklevel=2)
    value, form, ideal = next(r for r in finite if r[0] == best)
    attained = sum(1 for r in finite if r[0] == best)
    return PolarResult(value, form, ideal, attained, widened)


def euler_obstruction(phi: Polynomial, draws: int = DEFAULT_DRAWS,
                      rng: random.Random | None = None) -> int:
    """brn(p, X) + tau(X) - mu(X) + (-1)^n for the minimizing generic p,
    using brn(p, X) = polar multiplicity - tau(X)."""
    polar = polar_multiplicity(phi, draws, rng)
    tau = tjurina_number(phi)
    mu = milnor_number(phi)
    if not (is_finite(tau) and is_finite(mu)):
        raise NotIsolatedError("tau(X) or mu(X) is infinite")
    br_p = polar.value - tau
    sign = 1 if phi.n % 2 == 0 else -1
    return br_p + tau - mu + sign


def morsification_count(g: GermPair, draws: int = DEFAULT_DRAWS,
                        rng: random.Random | None = None) -> int:
    """Number of critical points of a Morsification of f on X minus the origin.

    N = brn(f, X) - mu(f) - polar multiplicity + tau(X).  Negative values are
    returned as computed; callers treat them as an inconsistency report.
    """
    br = br_via_trivial(g)
    mu_f = milnor_number(g.f)
    if not is_finite(mu_f):
        raise NotIsolatedError("mu(f) is infinite")
    polar = polar_multiplicity(g.phi, draws, rng)
    tau = tjurina_number(g.phi)
    return br - mu_f - polar.value + tau


# ---------------------------------------------------------------------------
# the consolidated report
# ---------------------------------------------------------------------------


def _record_ideal(report, label, presentation):
    value = presentation.colength()
    report.records.append(ColengthRecord(label, "ideal", tuple(presentation.generators),
                                         1, value))
    return value


def full_report(g: GermPair, draws: int = DEFAULT_DRAWS,
                rng: random.Random | None = None) -> InvariantReport:
    """Run every route and cross-check; failures become UNDEFINED, never errors."""
    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    rep = InvariantReport()
    clock = time.perf_counter

    t0 = clock()
    rep.mu_f = _record_ideal(rep, "mu_f", IdealPresentation(gradient(g.f)))
    rep.mu_X = _record_ideal(rep, "mu_X", IdealPresentation(gradient(g.phi)))
    rep.tau_X = _record_ideal(rep, "tau_X", IdealPresentation([g.phi] + gradient(g.phi)))
    rep.timings["basic"] = clock() - t0

    t0 = clock()
    trivial = df_trivial_ideal(g.f, g.phi)
    c_trivial = _record_ideal(rep, "df_trivial", trivial)
    rep.finitely_determined = is_finite(c_trivial)
    rep.timings["trivial"] = clock() - t0

    t0 = clock()
    c_icis = _record_ideal(rep, "icis", icis_ideal(g.phi, g.f))
    if is_finite(rep.mu_X) and is_finite(c_icis):
        rep.mu_icis = c_icis - rep.mu_X
    rep.timings["icis"] = clock() - t0

    t0 = clock()
    if is_finite(rep.mu_X):
        fields = theta_x(g.phi)
        rep.br_direct = _record_ideal(rep, "br_direct", df_ideal(g.f, fields))
        value, pre_gens, pre_rank = _theta_quotient(g.phi)
        rep.theta_quotient = value
        rep.records.append(ColengthRecord("theta_quotient", "module", pre_gens,
                                          pre_rank, value))
    rep.timings["theta"] = clock() - t0

    t0 = clock()
    if rep.finitely_determined and is_finite(rep.tau_X):
        rep.br_trivial_route = c_trivial - rep.tau_X
    if (is_finite(rep.mu_f) and rep.mu_icis is not UNDEFINED
            and is_finite(rep.mu_X) and is_finite(rep.tau_X)):
        rep.br_formula = rep.mu_f + rep.mu_icis + rep.mu_X - rep.tau_X
    c_section = _record_ideal(rep, "section", section_ideal(g.phi, g.f))
    if is_finite(c_section) and is_finite(rep.mu_X) and is_finite(rep.tau_X):
        rep.br_section_route = c_section + rep.mu_X - rep.tau_X
    rep.timings["routes"] = clock() - t0

    t0 = clock()
    if is_finite(rep.mu_X):
        polar = polar_multiplicity(g.phi, draws, rng)
        rep.polar_mult = polar.value
        rep.polar_form = render_polynomial(polar.form, g.vars)
        rep.records.append(ColengthRecord("polar", "ideal",
                                          tuple(polar.ideal.generators), 1, polar.value))
        if is_finite(rep.tau_X):
            sign = 1 if g.phi.n % 2 == 0 else -1
            rep.euler_obstruction = rep.polar_mult - rep.mu_X + sign
            if rep.finitely_determined and is_finite(rep.mu_f):
                rep.morsification_N = (rep.br_trivial_route - rep.mu_f
                                       - rep.polar_mult + rep.tau_X)
    rep.timings["polar"] = clock() - t0

    rep.weighted_homogeneous_hint = (is_finite(rep.mu_X) and is_finite(rep.tau_X)
                                     and rep.mu_X == rep.tau_X)
    rep.routes_agree = _routes_agree(rep)
    return rep


def _routes_agree(rep: InvariantReport) -> bool:
    """No disagreement among the values that are defined."""
    if rep.finitely_determined:
        four = [rep.br_direct, rep.br_trivial_route, rep.br_formula, rep.br_section_route]
        defined = [v for v in four if v is not UNDEFINED]
        if any(not is_finite(v) for v in defined):
            return False
        if len(set(defined)) > 1:
            return False
        # finite determinacy forces mu(X) < infinity, so both sides are defined
        if rep.theta_quotient != rep.tau_X:
            return False
        if rep.morsification_N is not UNDEFINED and rep.morsification_N < 0:
            return False
    else:
        # finiteness lemma: brn(f, X) must be infinite exactly when the
        # trivial-field colength is
        if rep.br_direct is not UNDEFINED and rep.br_direct != INFINITE:
            return False
    return True
