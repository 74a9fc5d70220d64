import pytest

from helpers import P
from locsing.errors import NotIsolatedError, NotTangentError
from locsing.parser import parse_polynomial
from locsing.poly import Polynomial, PolyVector
from locsing.standard_basis import (
    INFINITE,
    IdealPresentation,
    SubmodulePresentation,
    colength,
    ideal_membership,
    module_membership,
)
from locsing.tangent_fields import (
    apply_differential,
    df_ideal,
    df_trivial_ideal,
    is_trivial_field,
    tangent_module_pair,
    theta_x,
    trivial_generators,
)


def V(*srcs, names=("x", "y")):
    return PolyVector([P(s, names) for s in srcs])


CUSP = P("x^3 + y^2")
CROSS = P("x*y")


def test_trivial_generators_cusp():
    gens = trivial_generators(CUSP)
    assert gens == [V("x^3 + y^2", "0"), V("0", "x^3 + y^2"), V("2y", "-3x^2")]


def test_trivial_generators_cross():
    assert trivial_generators(CROSS) == [V("x*y", "0"), V("0", "x*y"), V("x", "-y")]


def test_trivial_generators_one_variable():
    f = parse_polynomial("x^2", ("x",))
    gens = trivial_generators(f)
    assert gens == [PolyVector([f])]


def test_trivial_generators_annihilate_phi():
    for phi in (CUSP, CROSS, P("x^5+y^5+x^2*y^2"), parse_polynomial("x^2+y^2+z^2", ("x", "y", "z"))):
        I = IdealPresentation([phi])
        for xi in trivial_generators(phi):
            assert ideal_membership(apply_differential(phi, xi), I)


def test_theta_x_cross():
    gens = theta_x(CROSS)
    M = SubmodulePresentation(gens)
    assert module_membership(V("x", "0"), M)
    assert module_membership(V("0", "y"), M)
    # conversely Theta_X = <(x,0),(0,y)> exactly for the normal crossing
    hand = SubmodulePresentation([V("x", "0"), V("0", "y")])
    for xi in gens:
        assert module_membership(xi, hand)


def test_theta_x_cusp_contains_euler_and_hamiltonian():
    gens = theta_x(CUSP)
    M = SubmodulePresentation(gens)
    euler = V("2x", "3y")
    assert apply_differential(CUSP, euler) == CUSP.scale(6)
    assert module_membership(euler, M)
    assert module_membership(V("2y", "-3x^2"), M)


def test_theta_x_tangency_and_containment():
    for phi in (CUSP, CROSS, P("x^5+y^5+x^2*y^2"), parse_polynomial("x^2+y^2+z^2", ("x", "y", "z"))):
        gens = theta_x(phi)
        I = IdealPresentation([phi])
        for xi in gens:
            assert ideal_membership(apply_differential(phi, xi), I)
        M = SubmodulePresentation(gens)
        for t in trivial_generators(phi):
            assert module_membership(t, M)


def test_theta_x_smooth_germ():
    # phi smooth at the origin: mu = 0 is allowed, and a generic direction
    # yields colength 0
    smooth = P("x + x^2")
    gens = theta_x(smooth)
    assert colength(df_ideal(P("y"), gens)) == 0


def test_theta_x_rejects_non_isolated():
    umbrella = parse_polynomial("x^2*y - z^2", ("x", "y", "z"))
    with pytest.raises(NotIsolatedError):
        theta_x(umbrella)
    with pytest.raises(ValueError):
        theta_x(P("x + 1"))


def test_tangent_module_pair():
    pair = tangent_module_pair(CROSS)
    assert pair.phi == CROSS
    assert len(pair.trivial_gens) == 3
    M = SubmodulePresentation(list(pair.full_gens))
    for t in pair.trivial_gens:
        assert module_membership(t, M)


def test_df_ideal_examples():
    I = df_ideal(P("y"), trivial_generators(CUSP))
    J = IdealPresentation([P("x^3 + y^2"), P("3x^2")])
    for g in I.generators:
        assert ideal_membership(g, J)
    for g in J.generators:
        assert ideal_membership(g, I)

    assert colength(df_ideal(P("x + y"), [])) == INFINITE

    K = df_ideal(P("x + y"), theta_x(CROSS))
    assert colength(K) == 1
    assert ideal_membership(P("x"), K)
    assert ideal_membership(P("y"), K)


def test_df_trivial_ideal_examples():
    I = df_trivial_ideal(P("y"), CUSP)
    assert colength(I) == 4
    assert colength(df_trivial_ideal(CUSP, CUSP)) == INFINITE
    assert colength(df_trivial_ideal(P("x + y"), CROSS)) == 2


def test_df_trivial_matches_df_of_trivial_generators():
    for phi, f in ((CUSP, P("y")), (CROSS, P("x + y")), (P("x^5+y^5+x^2*y^2"), P("x - y"))):
        closed = df_trivial_ideal(f, phi)
        direct = df_ideal(f, trivial_generators(phi))
        for g in closed.generators:
            assert ideal_membership(g, direct)
        for g in direct.generators:
            assert ideal_membership(g, closed)


def test_is_trivial_field():
    # Euler field on the cusp: witness lambda = 6 is a unit, not in J(phi)
    assert is_trivial_field(V("2x", "3y"), CUSP) is False
    # Hamiltonian: d(phi) vanishes identically
    assert is_trivial_field(V("2y", "-3x^2"), CUSP) is True
    # phi * d/dx_1
    assert is_trivial_field(V("x^3 + y^2", "0"), CUSP) is True
    for t in trivial_generators(CROSS):
        assert is_trivial_field(t, CROSS) is True


def test_is_trivial_field_rejects_non_tangent():
    with pytest.raises(NotTangentError):
        is_trivial_field(V("1", "0"), CUSP)


def test_euler_class_survives_when_tjurina_positive():
    # the Euler field generates a nonzero class of Theta_X/Theta_X^T whenever
    # the witness is a unit and the quotient is nonzero
    from locsing.standard_basis import quotient_dimension

    gens = theta_x(CUSP)
    assert quotient_dimension(gens, trivial_generators(CUSP)) == 2
    assert is_trivial_field(V("2x", "3y"), CUSP) is False
