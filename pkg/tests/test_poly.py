import random
from fractions import Fraction

import pytest

from quatkit.errors import EvalError, ExponentOverflowError, ModeMismatchError
from quatkit.expr import (
    Component,
    Conj,
    Const,
    Neg,
    Pow,
    Prod,
    Sum,
    Sym,
    VarQ,
    evaluate,
    parse,
    series,
)
from quatkit.poly import CanonicalPoly, eval_poly, expand, poly_to_json, render_poly
from quatkit.quaternion import Quaternion
from quatkit.scalar import Mode

from conftest import rand_quat

ONE, I, J, K = (Quaternion.unit(t) for t in range(4))


def random_poly_expr(rng: random.Random, depth: int = 3):
    """Seeded generator of polynomial-class expressions with rational constants."""
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.4:
            return VarQ()
        if r < 0.6:
            return Component(rng.randrange(4))
        c = Quaternion(*(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)))
        return Const(c)
    kind = rng.choice(["sum", "prod", "pow", "conj", "neg"])
    if kind == "sum":
        return Sum(random_poly_expr(rng, depth - 1), random_poly_expr(rng, depth - 1))
    if kind == "prod":
        return Prod(tuple(random_poly_expr(rng, depth - 1) for _ in range(rng.randint(2, 3))))
    if kind == "pow":
        return Pow(random_poly_expr(rng, depth - 1), rng.randint(0, 3))
    if kind == "conj":
        return Conj(random_poly_expr(rng, depth - 1))
    return Neg(random_poly_expr(rng, depth - 1))


def bounded_poly_expr(rng: random.Random, degree: int):
    """Sum of 1-3 terms of exactly ``degree``; every constant has norm <= 1.

    Factors are q, conj(q) or a component, with unit-ball constants
    interleaved so coefficients sit on both sides of the variable.
    """
    def small_const():
        while True:
            c = Quaternion(*(Fraction(rng.randint(-4, 4), 4) for _ in range(4)))
            if c.norm_squared() <= 1:
                return Const(c)

    terms = []
    for _ in range(rng.randint(1, 3)):
        factors = [small_const()]
        for _ in range(degree):
            r = rng.random()
            factors.append(VarQ() if r < 0.5 else Conj(VarQ()) if r < 0.75 else Component(rng.randrange(4)))
            if rng.random() < 0.3:
                factors.append(small_const())
        terms.append(factors[0] if len(factors) == 1 else Prod(tuple(factors)))
    e = terms[0]
    for t in terms[1:]:
        e = Sum(e, t)
    return e


class TestExpand:
    def test_q_conj_q(self):
        p = expand(parse("q*conj(q)"))
        one = Quaternion.one()
        assert p.terms == {(2, 0, 0, 0): one, (0, 2, 0, 0): one, (0, 0, 2, 0): one, (0, 0, 0, 2): one}

    def test_canonical_uniqueness(self):
        assert expand(parse("q*conj(q)")) == expand(parse("conj(q)*q"))
        assert expand(parse("q*conj(q)")) == expand(parse("q0^2+q1^2+q2^2+q3^2"))

    def test_q_squared(self):
        # frozen from a symbolic multiplication of (q0 + q1 i + q2 j + q3 k) with itself:
        # the mixed vector terms cancel in pairs since ij + ji = 0 etc.
        two = Quaternion.real(2)
        assert expand(parse("q^2")).terms == {
            (2, 0, 0, 0): ONE,
            (0, 2, 0, 0): -ONE,
            (0, 0, 2, 0): -ONE,
            (0, 0, 0, 2): -ONE,
            (1, 1, 0, 0): two * I,
            (1, 0, 1, 0): two * J,
            (1, 0, 0, 1): two * K,
        }

    def test_commutator_is_constant(self):
        assert expand(parse("i*j-j*i")) == CanonicalPoly.constant(Quaternion(0, 0, 0, 2))

    def test_identity(self):
        p = expand(parse("q"))
        assert eval_poly(p, Quaternion(1, 2, 3, 4)) == Quaternion(1, 2, 3, 4)

    def test_constants_collapse_in_order(self):
        # i*q*j: the coefficient of q1 is i*i*j = -j; of q2 is i*j*j = -i
        p = expand(parse("i*q*j"))
        assert p[(0, 1, 0, 0)] == -J
        assert p[(0, 0, 1, 0)] == -I
        assert p[(1, 0, 0, 0)] == K

    def test_empty(self):
        assert expand(parse("q - q")).is_zero()
        assert render_poly(expand(parse("q - q"))) == "0"

    def test_float_mode_inferred(self):
        p = expand(parse("0.5*q", Mode.FLOAT))
        assert p.mode is Mode.FLOAT

    def test_series_expands(self):
        s = series([ONE, ONE, Quaternion.real(Fraction(1, 2))])
        assert expand(s) == expand(parse("1 + q + 1/2*q^2"))

    def test_free_symbol_rejected(self):
        with pytest.raises(EvalError):
            expand(Sym("alpha"))

    def test_exponent_cap(self):
        with pytest.raises(ExponentOverflowError):
            expand(parse("(q0^40)^2"))

    def test_mode_mismatch(self):
        with pytest.raises(ModeMismatchError):
            expand(Sum(Const(I), Const(Quaternion(0.5, 0.0, 0.0, 0.0))))


def test_expand_eval_agreement():
    rng = random.Random(2024)
    for _ in range(500):
        e = random_poly_expr(rng)
        q = rand_quat(rng)
        assert eval_poly(expand(e, Mode.EXACT), q) == evaluate(e, q)


def test_bounded_generator():
    rng = random.Random(1)
    for d in range(5):
        p = expand(bounded_poly_expr(rng, d))
        assert p.degree() <= d


def test_render_round_trip():
    rng = random.Random(31)
    for _ in range(200):
        p = expand(random_poly_expr(rng), Mode.EXACT)
        assert expand(parse(render_poly(p)), Mode.EXACT) == p


def test_render_examples():
    assert render_poly(expand(parse("q"))) == "q0 + i*q1 + j*q2 + k*q3"
    assert render_poly(expand(parse("i*j-j*i"))) == "2*k"


class TestPolyAlgebra:
    def test_add_mul_match_evaluation(self):
        rng = random.Random(8)
        for _ in range(100):
            a, b = (expand(random_poly_expr(rng), Mode.EXACT) for _ in range(2))
            q = rand_quat(rng)
            assert eval_poly(a * b, q) == eval_poly(a, q) * eval_poly(b, q)
            assert eval_poly(a + b, q) == eval_poly(a, q) + eval_poly(b, q)
            assert eval_poly(a.conjugate(), q) == eval_poly(a, q).conjugate()

    def test_derivative(self):
        p = expand(parse("q0^3*i + q0*q1*j"))
        assert p.derivative(0) == expand(parse("3*q0^2*i + q1*j"))
        assert p.derivative(3).is_zero()

    def test_left_right_mul(self):
        p = expand(parse("q1"))
        assert p.left_mul(I) == expand(parse("i*q1"))
        assert expand(parse("q*i")) == expand(parse("q")).right_mul(I)
        assert expand(parse("i*q")) == expand(parse("q")).left_mul(I)

    def test_real_components_round_trip(self):
        p = expand(parse("k*q*i + q^2"))
        assert CanonicalPoly.from_real_components(p.real_components()) == p

    def test_json(self):
        obj = poly_to_json(expand(parse("i*j-j*i")))
        assert obj["terms"] == [{"exponents": [0, 0, 0, 0], "coefficient": {"w": "0", "x": "0", "y": "0", "z": "2"}}]

    def test_bad_multi_index(self):
        with pytest.raises(ValueError):
            CanonicalPoly({(1, 0, 0): ONE})
