import random

import pytest

from helpers import P
from locsing.errors import NonIcisError, NotFinitelyDeterminedError, NotIsolatedError
from locsing.invariants import (
    UNDEFINED,
    GermPair,
    br_direct,
    br_via_formula,
    br_via_section,
    br_via_trivial,
    euler_obstruction,
    full_report,
    icis_milnor,
    is_finitely_determined,
    milnor_number,
    morsification_count,
    polar_multiplicity,
    theta_quotient_dim,
    tjurina_number,
    tjurina_via_linear,
)
from locsing.parser import parse_polynomial
from locsing.poly import Polynomial, PolyVector
from locsing.standard_basis import (
    INFINITE,
    colength,
    is_finite,
    quotient_dimension,
)
from locsing.tangent_fields import (
    apply_differential,
    df_ideal,
    df_trivial_ideal,
    theta_x,
    trivial_generators,
)

CUSP = P("x^3 + y^2")
CROSS = P("x*y")
TSING = P("x^5 + y^5 + x^2*y^2")
UMBRELLA = parse_polynomial("x^2*y - z^2", ("x", "y", "z"))
QUADRIC3 = parse_polynomial("x^2 + y^2 + z^2", ("x", "y", "z"))


def pair(phi, f, names=("x", "y")):
    if isinstance(phi, str):
        phi = parse_polynomial(phi, names)
    if isinstance(f, str):
        f = parse_polynomial(f, names)
    return GermPair(tuple(names), phi, f)


# -- Milnor and Tjurina --------------------------------------------------------


def test_milnor_examples():
    assert milnor_number(P("x^2 + y^2")) == 1
    assert milnor_number(CUSP) == 2
    assert milnor_number(TSING) == 11
    assert milnor_number(UMBRELLA) == INFINITE
    with pytest.raises(ValueError):
        milnor_number(P("x + 1"))


def test_tjurina_examples():
    assert tjurina_number(CUSP) == 2
    assert tjurina_number(CROSS) == 1
    assert tjurina_number(TSING) == 10
    assert tjurina_number(UMBRELLA) == INFINITE


def test_icis_milnor_examples():
    assert icis_milnor(CUSP, P("y")) == 2
    assert icis_milnor(CROSS, P("x + y")) == 1
    assert icis_milnor(P("x^2 + y^2"), P("x")) == 1
    with pytest.raises(NonIcisError):
        icis_milnor(CROSS, P("x"))
    with pytest.raises(NotIsolatedError):
        icis_milnor(UMBRELLA, parse_polynomial("z", ("x", "y", "z")))


# -- the four routes -------------------------------------------------------------


def test_br_direct_examples():
    assert br_direct(pair(CUSP, "y")) == 2
    assert br_direct(pair(CROSS, "x + y")) == 1
    assert br_direct(pair(CUSP, "x")) == 1


def test_br_via_trivial_examples():
    assert br_via_trivial(pair(CUSP, "y")) == 2
    assert br_via_trivial(pair(CROSS, "x + y")) == 1
    with pytest.raises(NotFinitelyDeterminedError):
        br_via_trivial(pair(CROSS, "x"))


def test_br_via_formula_examples():
    assert br_via_formula(pair(CUSP, "y")) == 2
    assert br_via_formula(pair(CROSS, "x + y")) == 1


def test_br_via_section_examples():
    assert br_via_section(pair(CUSP, "y")) == 2
    assert br_via_section(pair(CROSS, "x + y")) == 1


def test_br_infinite_iff_not_finitely_determined():
    g = pair(CROSS, "x")
    assert br_direct(g) == INFINITE
    assert not is_finitely_determined(g)
    h = pair(CUSP, "y")
    assert is_finite(br_direct(h))
    assert is_finitely_determined(h)


def test_is_finitely_determined_examples():
    assert is_finitely_determined(pair(CUSP, "y"))
    assert not is_finitely_determined(pair(CUSP, CUSP))
    assert not is_finitely_determined(pair(CROSS, "x"))


def test_trivial_route_identity():
    # colength(df over trivial fields) = mu(f) + mu(phi, f) + mu(X)
    for phi, f in ((CUSP, P("y")), (CUSP, P("x + 2y")), (CROSS, P("x + y")),
                   (TSING, P("x - y"))):
        c = colength(df_trivial_ideal(f, phi))
        assert c == milnor_number(f) + icis_milnor(phi, f) + milnor_number(phi)


# -- Tjurina through tangent modules ----------------------------------------------


def test_theta_quotient_examples():
    assert theta_quotient_dim(CUSP) == 2
    assert theta_quotient_dim(CROSS) == 1
    assert theta_quotient_dim(TSING) == 10


def test_tjurina_via_linear_examples():
    assert tjurina_via_linear(CUSP, P("x")) == 2
    # y is a non-generic direction for the cusp, but the quotient still sees tau
    assert tjurina_via_linear(CUSP, P("y")) == 2
    assert tjurina_via_linear(CROSS, P("x + y")) == 1
    with pytest.raises(ValueError):
        tjurina_via_linear(CUSP, P("x^2"))
    with pytest.raises(ValueError):
        tjurina_via_linear(CUSP, Polynomial.zero(2))


def test_tjurina_via_linear_degenerate_direction():
    # For phi = xy and p = x the form vanishes on a branch, p is not finitely
    # determined over X, and dp(Theta_X^T) = <x> has infinite colength.  The
    # identity with tau genuinely fails there: dp(Theta_X) = dp(Theta_X^T),
    # so the quotient is 0, not tau = 1.
    assert tjurina_via_linear(CROSS, P("x")) == 0
    assert colength(df_trivial_ideal(P("x"), CROSS)) == INFINITE


def test_f_independence_of_the_df_quotient():
    # same integer for every finitely determined f, equal to tau
    for phi in (CUSP, CROSS, TSING):
        tau = tjurina_number(phi)
        fields = theta_x(phi)
        triv = trivial_generators(phi)
        for f in (P("x + 2y"), P("x - y"), P("y + x^2")):
            if not is_finitely_determined(GermPair(("x", "y"), phi, f)):
                continue
            numer = [PolyVector([apply_differential(f, xi)]) for xi in fields]
            denom = [PolyVector([apply_differential(f, xi)]) for xi in triv]
            assert quotient_dimension(numer, denom) == tau


# -- polar multiplicity and Euler obstruction --------------------------------------


def test_polar_multiplicity_cusp():
    res = polar_multiplicity(CUSP, rng=random.Random(1))
    assert res.value == 3
    # the non-generic direction y alone would give 4
    from locsing.invariants import polar_ideal

    assert colength(polar_ideal(CUSP, P("y"))) == 4
    assert colength(polar_ideal(CUSP, P("x"))) == 3


def test_polar_multiplicity_cross_and_morse():
    assert polar_multiplicity(CROSS, rng=random.Random(2)).value == 2
    assert polar_multiplicity(P("x^2 + y^2"), rng=random.Random(3)).value == 2
    with pytest.raises(NotIsolatedError):
        polar_multiplicity(UMBRELLA)
    with pytest.raises(ValueError):
        polar_multiplicity(CUSP, draws=1)


def test_polar_multiplicity_deterministic_under_seed():
    a = polar_multiplicity(TSING, rng=random.Random(9))
    b = polar_multiplicity(TSING, rng=random.Random(9))
    assert a.value == b.value and a.form == b.form


def test_euler_obstruction_examples():
    assert euler_obstruction(CUSP, rng=random.Random(4)) == 2
    assert euler_obstruction(CROSS, rng=random.Random(5)) == 2
    # A1 surface: cone over a conic, Eu = chi - degree = 0
    assert euler_obstruction(QUADRIC3, rng=random.Random(6)) == 0


def test_euler_obstruction_equals_multiplicity_for_plane_curves():
    for phi in (P("x^2 + y^2"), CUSP, CROSS, P("x^3 + y^4"), TSING):
        assert euler_obstruction(phi, rng=random.Random(7)) == phi.multiplicity()


def test_morsification_count_examples():
    assert morsification_count(pair(CUSP, "x + 2y"), rng=random.Random(8)) == 0
    assert morsification_count(pair(CROSS, "x + y"), rng=random.Random(8)) == 0
    assert morsification_count(pair(CUSP, "y"), rng=random.Random(8)) == 1


# -- consolidated reports ------------------------------------------------------------


def test_full_report_cusp_y():
    rep = full_report(pair(CUSP, "y"), rng=random.Random(0))
    assert rep.mu_f == 0
    assert rep.mu_X == 2 and rep.tau_X == 2
    assert rep.mu_icis == 2
    assert rep.br_direct == rep.br_trivial_route == rep.br_formula == rep.br_section_route == 2
    assert rep.theta_quotient == 2
    assert rep.polar_mult == 3
    assert rep.euler_obstruction == 2
    assert rep.morsification_N == 1
    assert rep.finitely_determined and rep.routes_agree
    assert rep.weighted_homogeneous_hint


def test_full_report_non_determined_pair():
    rep = full_report(pair(CROSS, "x"), rng=random.Random(0))
    assert not rep.finitely_determined
    assert rep.br_direct == INFINITE
    assert rep.br_trivial_route is UNDEFINED
    assert rep.br_formula is UNDEFINED
    assert rep.mu_icis is UNDEFINED
    assert rep.morsification_N is UNDEFINED
    assert rep.routes_agree  # no defined values disagree


def test_full_report_tsing():
    rep = full_report(pair(TSING, "x + 2y"), rng=random.Random(0))
    assert rep.mu_X == 11 and rep.tau_X == 10
    assert not rep.weighted_homogeneous_hint
    assert is_finite(rep.br_direct)
    assert rep.br_direct == rep.br_trivial_route == rep.br_formula == rep.br_section_route
    assert rep.theta_quotient == 10
    assert rep.routes_agree


def test_full_report_umbrella():
    g = GermPair(("x", "y", "z"), UMBRELLA, parse_polynomial("x + 2y + 3z", ("x", "y", "z")))
    rep = full_report(g, rng=random.Random(0))
    assert rep.mu_X == INFINITE and rep.tau_X == INFINITE
    assert not rep.finitely_determined
    assert rep.br_direct is UNDEFINED
    assert rep.polar_mult is UNDEFINED
    assert rep.euler_obstruction is UNDEFINED


def test_weighted_homogeneous_specialization():
    # for weighted homogeneous X: mu = tau and brn = mu(f) + mu(phi, f)
    for phi in (CUSP, CROSS, P("x^3 + y^4")):
        assert milnor_number(phi) == tjurina_number(phi)
        for f in (P("x + 2y"), P("y")):
            g = GermPair(("x", "y"), phi, f)
            if not is_finitely_determined(g):
                continue
            assert br_direct(g) == milnor_number(f) + icis_milnor(phi, f)


def test_symmetry_identity():
    # brn(f, X) - brn(phi, Y) = tau(Y) - tau(X) for doubly finite pairs
    cases = [
        (P("x^3 + y^2"), P("x^2 + y^3")),
        (P("x^3 + y^2"), TSING),
    ]
    for f, phi in cases:
        fwd = GermPair(("x", "y"), phi, f)
        rev = GermPair(("x", "y"), f, phi)
        assert is_finitely_determined(fwd) and is_finitely_determined(rev)
        lhs = br_via_trivial(fwd) - br_via_trivial(rev)
        assert lhs == tjurina_number(f) - tjurina_number(phi)


def test_germ_pair_validation():
    with pytest.raises(ValueError):
        GermPair(("x", "y"), P("x + 1"), P("y"))
    with pytest.raises(ValueError):
        GermPair(("x", "x"), P("x"), P("y"))
    with pytest.raises(ValueError):
        GermPair(("x", "y"), Polynomial.zero(2), P("y"))
