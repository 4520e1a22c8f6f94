"""Exterior calculus: wedge, derivative, contraction, Lie theory, saturation."""

import random
from fractions import Fraction

import pytest

from jpencil.exterior import (
    DiffForm,
    PolyVectorField,
    descends_check,
    differential,
    euler_field,
    exterior_derivative,
    form_to_text,
    integrability_check,
    interior_product,
    lie_bracket,
    lie_derivative,
    parse_form_text,
    pullback_form,
    saturate,
    two_form_report_items,
    volume_form,
    wedge,
)
from jpencil.poly import MultiPoly
from jpencil.polytext import PolyParseError, parse_poly


def _rand_poly(rng, arity, maxdeg):
    P = MultiPoly.zero(arity)
    for _ in range(rng.randint(1, 3)):
        exps = [0] * arity
        for _ in range(rng.randint(0, maxdeg)):
            exps[rng.randrange(arity)] += 1
        P = P + MultiPoly.monomial(arity, tuple(exps), Fraction(rng.randint(-3, 3)))
    return P


def _rand_one_form(rng, arity, maxdeg):
    return DiffForm.one_form([_rand_poly(rng, arity, maxdeg) for _ in range(arity)])


def _rand_field(rng, arity, maxdeg):
    return PolyVectorField([_rand_poly(rng, arity, maxdeg) for _ in range(arity)])


def test_wedge_graded_commutativity():
    rng = random.Random(4001)
    for _ in range(10):
        a = _rand_one_form(rng, 3, 2)
        b = _rand_one_form(rng, 3, 2)
        assert wedge(a, b) == -wedge(b, a)
        assert wedge(a, a).is_zero
    # 2-form against 1-form commutes
    a = _rand_one_form(rng, 4, 1)
    b = _rand_one_form(rng, 4, 1)
    c = _rand_one_form(rng, 4, 1)
    ab = wedge(a, b)
    assert wedge(ab, c) == wedge(c, ab)


def test_wedge_associative():
    rng = random.Random(4002)
    for _ in range(5):
        a = _rand_one_form(rng, 4, 1)
        b = _rand_one_form(rng, 4, 1)
        c = _rand_one_form(rng, 4, 1)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_d_squared_zero():
    rng = random.Random(4003)
    for _ in range(10):
        a = _rand_one_form(rng, 3, 3)
        assert exterior_derivative(exterior_derivative(a)).is_zero
        f = _rand_poly(rng, 3, 3)
        assert exterior_derivative(differential(f)).is_zero


def test_d_leibniz_on_wedge():
    rng = random.Random(4004)
    for _ in range(5):
        a = _rand_one_form(rng, 3, 2)
        b = _rand_one_form(rng, 3, 2)
        lhs = exterior_derivative(wedge(a, b))
        rhs = wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b))
        assert lhs == rhs


def test_top_degree_derivative_is_zero():
    rng = random.Random(4005)
    top = wedge(_rand_one_form(rng, 3, 1), wedge(_rand_one_form(rng, 3, 1),
                                                 _rand_one_form(rng, 3, 1)))
    assert top.degree == 3
    d = exterior_derivative(top)
    assert d.is_zero


def test_interior_product_antiderivation():
    rng = random.Random(4006)
    for _ in range(5):
        V = _rand_field(rng, 3, 1)
        a = _rand_one_form(rng, 3, 2)
        b = _rand_one_form(rng, 3, 2)
        lhs = interior_product(V, wedge(a, b))
        iva = interior_product(V, a).terms.get((), MultiPoly.zero(3))
        ivb = interior_product(V, b).terms.get((), MultiPoly.zero(3))
        rhs = b * iva - a * ivb
        assert lhs == rhs
        assert interior_product(V, interior_product(V, wedge(a, b))).is_zero


def test_cartan_formula():
    rng = random.Random(4007)
    for _ in range(5):
        V = _rand_field(rng, 3, 1)
        a = _rand_one_form(rng, 3, 2)
        lhs = lie_derivative(V, a)
        rhs = interior_product(V, exterior_derivative(a)) + exterior_derivative(
            interior_product(V, a))
        assert lhs == rhs


def test_lie_bracket_against_derivatives():
    rng = random.Random(4008)
    for _ in range(5):
        V = _rand_field(rng, 3, 1)
        W = _rand_field(rng, 3, 1)
        f = _rand_poly(rng, 3, 2)
        lhs = lie_bracket(V, W).apply_to(f)
        rhs = V.apply_to(W.apply_to(f)) - W.apply_to(V.apply_to(f))
        assert lhs == rhs


def test_euler_contraction_counts_degree():
    # i_R df = deg(f) * f on homogeneous f
    f = parse_poly("x0^2*x1 + x1^3", ("x0", "x1", "x2"))
    contracted = interior_product(euler_field(3), differential(f))
    assert contracted.terms.get((), MultiPoly.zero(3)) == f * 3


def test_descends_and_integrability_known_form():
    # x1 dx0 - x0 dx1 descends and is integrable
    x0 = MultiPoly.variable(2, 0)
    x1 = MultiPoly.variable(2, 1)
    omega = DiffForm.one_form([x1, -x0])
    assert descends_check(omega).ok
    assert integrability_check(omega).ok
    bad = DiffForm.one_form([x1, x0])
    assert not descends_check(bad).ok


def test_descends_rejects_inhomogeneous():
    x0 = MultiPoly.variable(2, 0)
    with pytest.raises(ValueError):
        descends_check(DiffForm.one_form([x0 + x0 * x0, MultiPoly.zero(2)]))


def test_saturate_contract():
    # the full coefficient gcd x2^2 comes out, not just one power
    x = [MultiPoly.variable(3, i) for i in range(3)]
    core = DiffForm.one_form([x[1], -x[0], MultiPoly.zero(3)])
    scaled = core * (x[2] * x[2] * Fraction(-6))
    sat = saturate(scaled)
    assert sat.form == core
    assert sat.factor == x[2] * x[2] * Fraction(-6)
    assert sat.factor * sat.form == scaled
    # already-primitive input keeps a degree-0 factor
    sat2 = saturate(sat.form)
    assert sat2.factor.total_degree() == 0


def test_pullback_composition():
    rng = random.Random(4009)
    eta = _rand_one_form(rng, 3, 2)
    A = [[Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(3)]
    B = [[Fraction(rng.randint(-2, 2)) for _ in range(5)] for _ in range(4)]
    once = pullback_form(B, pullback_form(A, eta, 4), 5)
    composed = [[sum(A[i][k] * B[k][j] for k in range(4)) for j in range(5)]
                for i in range(3)]
    assert once == pullback_form(composed, eta, 5)


def test_form_text_round_trip():
    rng = random.Random(4010)
    names = ("x0", "x1", "x2", "x3")
    for _ in range(10):
        omega = _rand_one_form(rng, 4, 2)
        text = form_to_text(omega, names)
        parsed, parsed_names = parse_form_text(text)
        assert parsed == omega
        assert parsed_names == names


def test_form_text_errors():
    with pytest.raises(PolyParseError):
        parse_form_text("coeff x0: x1\n")
    with pytest.raises(PolyParseError):
        parse_form_text("vars: x0 x1\ncoeff x0: x1\n")
    with pytest.raises(PolyParseError):
        parse_form_text("vars: x0 x1\ncoeff x0: x1\ncoeff x0: x1\ncoeff x1: x0\n")
    # comment lines are skipped
    form, _ = parse_form_text("# leading note\nvars: x0 x1\ncoeff x0: x1\ncoeff x1: 0\n")
    assert form == DiffForm.one_form([MultiPoly.variable(2, 1), MultiPoly.zero(2)])


def test_two_form_report_items():
    # only nonzero components are listed
    x = [MultiPoly.variable(3, i) for i in range(3)]
    omega = DiffForm.one_form([x[1], -x[0], MultiPoly.zero(3)])
    items = two_form_report_items(exterior_derivative(omega), ("x0", "x1", "x2"))
    assert items == [("d x0^d x1", "-2")]


def test_volume_form_and_euler():
    vol = volume_form(3)
    assert vol.degree == 3
    contracted = interior_product(euler_field(3), vol)
    assert contracted.degree == 2
    assert not contracted.is_zero
