import random

import pytest

from helpers import P, rand_mono, rand_poly
from locsing.errors import DimensionMismatch
from locsing.poly import (
    LOCAL_ORDER,
    Polynomial,
    PolyVector,
    ecart,
    jacobian_minor,
    leading_term,
    partial_derivative,
    render_polynomial,
)


def test_add_cancellation():
    assert P("x + y") + P("-x") == P("y")


def test_add_identity():
    f = P("x^3 + y^2")
    assert f + Polynomial.zero(2) == f


def test_add_doubling():
    f = P("x^3 + y^2")
    assert f + f == P("2x^3 + 2y^2")


def test_mul_difference_of_squares():
    assert P("x + y") * P("x - y") == P("x^2 - y^2")


def test_mul_identity():
    f = P("x^3 - 2x*y + 7")
    assert f * Polynomial.constant(2, 1) == f


def test_mul_plain_product():
    assert P("x + 1") * P("x") == P("x^2 + x")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        P("x + y") + P("x", names=("x",))
    with pytest.raises(DimensionMismatch):
        P("x + y") * P("x", names=("x",))


def test_partial_derivative():
    f = P("x^3 + y^2")
    assert partial_derivative(f, 0) == P("3x^2")
    assert partial_derivative(f, 1) == P("2y")
    assert partial_derivative(Polynomial.constant(2, 5), 0) == Polynomial.zero(2)
    with pytest.raises(IndexError):
        f.diff(2)


def test_jacobian_minor():
    assert jacobian_minor(P("y"), P("x^3 + y^2"), 0, 1) == P("-3x^2")
    f = P("x^2 + x*y")
    assert jacobian_minor(f, f, 0, 1) == Polynomial.zero(2)
    assert jacobian_minor(P("x + y"), P("x*y"), 0, 1) == P("x - y")
    with pytest.raises(ValueError):
        jacobian_minor(P("x"), P("y"), 1, 1)


def test_leading_term_prefers_low_degree():
    c, m = leading_term(P("x + x^2"))
    assert (c, m) == (1, (1, 0))
    c, m = leading_term(P("1 + x"))
    assert (c, m) == (1, (0, 0))


def test_leading_term_degree_tie_is_deterministic():
    # degree tie broken reverse-lexicographically with x > y: x^2*y leads
    c, m = leading_term(P("3x^2*y + 2x*y^2"))
    assert (c, m) == (3, (2, 1))
    with pytest.raises(ValueError):
        leading_term(Polynomial.zero(2))


def test_ring_axioms_on_random_inputs():
    rng = random.Random(7)
    for _ in range(60):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_leibniz_rule_on_random_inputs():
    rng = random.Random(11)
    for _ in range(40):
        f, g = rand_poly(rng), rand_poly(rng)
        for i in range(2):
            assert (f * g).diff(i) == f * g.diff(i) + g * f.diff(i)


def test_local_order_is_multiplicative():
    rng = random.Random(13)
    for _ in range(200):
        m1, m2, m = rand_mono(rng), rand_mono(rng), rand_mono(rng)
        if m1 == m2:
            continue
        bigger = LOCAL_ORDER.greater(m1, m2)
        from locsing.poly import mono_mul

        assert LOCAL_ORDER.greater(mono_mul(m, m1), mono_mul(m, m2)) == bigger


def test_unit_monomial_is_largest():
    rng = random.Random(17)
    for _ in range(100):
        m = rand_mono(rng)
        if sum(m):
            assert LOCAL_ORDER.greater((0, 0), m)


def test_ecart_nonnegative():
    rng = random.Random(19)
    for _ in range(80):
        f = rand_poly(rng)
        if f:
            assert ecart(f) >= 0
    assert ecart(P("x + x^3")) == 2
    assert ecart(P("x^2")) == 0


def test_render():
    assert render_polynomial(P("x^3 + y^2"), ("x", "y")) == "y^2 + x^3"
    assert render_polynomial(P("-x + 1/2*y^2"), ("x", "y")) == "-x + 1/2*y^2"
    assert render_polynomial(Polynomial.zero(2), ("x", "y")) == "0"
    assert render_polynomial(P("2x*y - 7"), ("x", "y")) == "-7 + 2*x*y"


def test_vector_basics():
    v = PolyVector([P("x"), P("y")])
    w = PolyVector([P("y"), P("-x")])
    assert (v + w).components == (P("x + y"), P("y - x"))
    assert v.mul_term(2, (1, 0)) == PolyVector([P("2x^2"), P("2x*y")])
    assert not PolyVector.zero(2, 2)
    assert PolyVector.unit(3, 2, 1).components[1] == Polynomial.constant(2, 1)
    with pytest.raises(DimensionMismatch):
        v + PolyVector([P("x")])
