import random
from fractions import Fraction

import pytest

from quatkit.errors import InvalidArgumentError, ModeMismatchError, NumericDomainError
from quatkit.expr import as_function, parse
from quatkit.fueter import (
    Division,
    PartialOp,
    RegularityConfig,
    Side,
    apply_pde_system,
    difference_quotient,
    direction_spread,
    fueter_left_symbolic,
    fueter_numeric,
    fueter_right_symbolic,
    fueter_symbolic,
    fueter_variables,
    is_regular,
    pde_system_matrix,
    render_operator_matrix,
    sample_ball,
)
from quatkit.poly import CanonicalPoly, eval_poly, expand
from quatkit.quaternion import Quaternion
from quatkit.report import Method, Verdict
from quatkit.scalar import Mode

from test_poly import bounded_poly_expr, random_poly_expr

ONE, I, J, K = (Quaternion.unit(t) for t in range(4))
F = Mode.FLOAT


def fq(w, x, y, z):
    return Quaternion(float(w), float(x), float(y), float(z))


def const(c):
    return CanonicalPoly.constant(c)


class TestSymbolic:
    def test_q_both_sides(self):
        p = expand(parse("q"))
        assert fueter_left_symbolic(p) == const(Quaternion.real(-2))
        assert fueter_right_symbolic(p) == const(Quaternion.real(-2))

    def test_conj_q(self):
        p = expand(parse("conj(q)"))
        assert fueter_right_symbolic(p) == const(Quaternion.real(4))
        assert fueter_left_symbolic(p) == const(Quaternion.real(4))

    def test_constants_and_zero(self):
        for side in Side:
            assert fueter_symbolic(expand(parse("j")), side).is_zero()
            assert fueter_symbolic(CanonicalPoly.zero(), side).is_zero()

    def test_fueter_variables_left_regular(self):
        for p in fueter_variables():
            assert fueter_left_symbolic(p).is_zero()
        assert fueter_variables()[0] == expand(parse("q1 - i*q0"))

    def test_units_act_on_the_correct_side(self):
        # hand expansion: D_l(q1*j) = i*j = k, D_r(q1*j) = j*i = -k
        p = expand(parse("q1*j"))
        assert fueter_left_symbolic(p) == const(K)
        assert fueter_right_symbolic(p) == const(-K)
        # D_l(q2*i*k) = j*(i*k) = j*(-j) = 1 ; D_r = (i*k)*j = -j*j = 1
        p = expand(parse("q2*i*k"))
        assert fueter_left_symbolic(p) == const(ONE)
        assert fueter_right_symbolic(p) == const(ONE)

    def test_linearity(self):
        rng = random.Random(4)
        for _ in range(100):
            a, b = (expand(random_poly_expr(rng), Mode.EXACT) for _ in range(2))
            for side in Side:
                assert fueter_symbolic(a + b, side) == fueter_symbolic(a, side) + fueter_symbolic(b, side)

    def test_left_and_right_are_conjugate_related(self):
        # conj(e_t d) = conj(d) conj(e_t), so conj(D_l f) = d0 g - (D_r g - d0 g) with g = conj(f)
        rng = random.Random(5)
        for _ in range(100):
            p = expand(random_poly_expr(rng), Mode.EXACT)
            g = p.conjugate()
            two_d0 = g.derivative(0) + g.derivative(0)
            assert fueter_left_symbolic(p).conjugate() == two_d0 - fueter_right_symbolic(g)


class TestNumeric:
    def test_q_right(self):
        f = as_function(parse("q"), F)
        for q in sample_ball(10, 1):
            r = fueter_numeric(f, Side.RIGHT, q, 1e-5)
            assert (r - Quaternion.real(-2.0)).norm() <= 1e-8

    def test_fueter_variable_left(self):
        f = as_function(parse("q1 - i*q0"), F)
        for q in sample_ball(10, 2):
            assert fueter_numeric(f, Side.LEFT, q).norm() <= 1e-8

    def test_q_squared_at_one(self):
        p = expand(parse("q^2"))
        sym = eval_poly(fueter_left_symbolic(p), Quaternion.one()).to_float()
        num = fueter_numeric(as_function(parse("q^2"), F), Side.LEFT, Quaternion.one(F))
        assert (sym - num).norm() <= 1e-6

    def test_symbolic_numeric_agreement(self):
        rng = random.Random(6)
        for checked in range(60):
            e = bounded_poly_expr(rng, checked % 5)
            p = expand(e, Mode.EXACT)
            f = as_function(e, F)
            for side in Side:
                sym = fueter_symbolic(p, side)
                for q in sample_ball(5, checked):
                    exact_q = q.to_exact()
                    expected = eval_poly(sym, exact_q).to_float()
                    assert (fueter_numeric(f, side, q) - expected).norm() <= 1e-6

    def test_float_mode_required(self):
        with pytest.raises(ModeMismatchError):
            fueter_numeric(lambda q: q, Side.LEFT, ONE)

    def test_bad_step(self):
        with pytest.raises(InvalidArgumentError):
            fueter_numeric(lambda q: q, Side.LEFT, Quaternion.one(F), h=0.0)

    def test_non_finite(self):
        def blow_up(q):
            return Quaternion(float("inf"), 0.0, 0.0, 0.0)

        with pytest.raises(NumericDomainError):
            fueter_numeric(blow_up, Side.LEFT, Quaternion.one(F))

    def test_sample_ball(self):
        pts = sample_ball(200, 3)
        assert len(pts) == 200
        assert all(p.norm() <= 1.0 for p in pts)
        assert pts == sample_ball(200, 3)


class TestIsRegular:
    @pytest.mark.parametrize("side", list(Side))
    def test_q_not_regular(self, side):
        for method in Method:
            assert is_regular(parse("q"), side, method).verdict is Verdict.NOT_REGULAR

    def test_fueter_variable_regular(self):
        rep = is_regular(parse("q1 - i*q0"), Side.LEFT, Method.SYMBOLIC)
        assert rep.verdict is Verdict.REGULAR
        assert rep.symbolic_result.is_zero()
        assert rep.regular

    @pytest.mark.parametrize("side", list(Side))
    def test_constant_regular(self, side):
        assert is_regular(parse("j"), side).regular

    def test_numeric_report(self):
        rep = is_regular(parse("q"), Side.RIGHT, Method.NUMERIC, RegularityConfig(samples=7))
        assert len(rep.residuals) == 7
        assert rep.max_residual == pytest.approx(2.0, abs=1e-8)
        assert rep.tolerance == 1e-6
        assert any("evidence" in n for n in rep.notes)

    def test_numeric_regular(self):
        rep = is_regular(parse("q2 - j*q0"), Side.LEFT, Method.NUMERIC)
        assert rep.regular and rep.max_residual <= 1e-6

    def test_explicit_points(self):
        cfg = RegularityConfig(points=(Quaternion(1, 0, 0, 0),))
        rep = is_regular(parse("q"), Side.LEFT, Method.NUMERIC, cfg)
        assert rep.residuals[0].point == Quaternion(1.0, 0.0, 0.0, 0.0)


class TestDifferenceQuotient:
    def test_q_squared_along_one(self):
        f = as_function(parse("q^2"), F)
        d = difference_quotient(f, fq(0, 0, 1, 0), Quaternion.one(F))
        assert (d - fq(0, 0, 2, 0)).norm() <= 1e-5

    def test_q_squared_along_i(self):
        f = as_function(parse("q^2"), F)
        d = difference_quotient(f, fq(0, 0, 1, 0), fq(0, 1, 0, 0))
        assert d.norm() <= 1e-5

    def test_q_squared_matches_conjugation_oracle(self):
        # limit of h^-1[(q+h)^2 - q^2] is q + h^-1 q h for every direction h
        rng = random.Random(9)
        f = as_function(parse("q^2"), F)
        for _ in range(50):
            q = fq(*(rng.uniform(-1, 1) for _ in range(4)))
            d = fq(*(rng.uniform(-1, 1) for _ in range(4)))
            expected = q + d.inverse() * q * d
            assert (difference_quotient(f, q, d) - expected).norm() <= 1e-4

    def test_linear_is_direction_independent(self):
        f = as_function(parse("a + q*b where a=i, b=k"), F)
        rng = random.Random(10)
        dirs = [fq(*(rng.uniform(-1, 1) for _ in range(4))) for _ in range(20)]
        for d in dirs:
            assert (difference_quotient(f, fq(0.3, -0.2, 0.5, 0.1), d) - K.to_float()).norm() <= 1e-6
        assert direction_spread(f, fq(0.3, -0.2, 0.5, 0.1), dirs) <= 1e-6

    def test_right_division_depends_on_direction(self):
        # the right-division variant turns q*b into d b d^-1, which is not b in general
        f = as_function(parse("q*k"), F)
        d = difference_quotient(f, fq(0, 0, 0, 0), fq(0, 1, 0, 0), division=Division.RIGHT)
        assert (d - (-K).to_float()).norm() <= 1e-6

    def test_q_squared_spread(self):
        f = as_function(parse("q^2"), F)
        assert direction_spread(f, fq(0, 0, 1, 0), [Quaternion.one(F), fq(0, 1, 0, 0)]) >= 1.9

    def test_zero_direction(self):
        with pytest.raises(InvalidArgumentError):
            difference_quotient(lambda q: q, Quaternion.one(F), Quaternion.zero(F))

    def test_bad_eps(self):
        with pytest.raises(InvalidArgumentError):
            difference_quotient(lambda q: q, Quaternion.one(F), Quaternion.one(F), eps=-1.0)


class TestPdeSystem:
    def test_row_zero(self):
        m = pde_system_matrix(Side.LEFT)
        assert m[0] == (PartialOp(1, 0), PartialOp(-1, 1), PartialOp(-1, 2), PartialOp(-1, 3))
        assert pde_system_matrix(Side.RIGHT)[0] == m[0]

    def test_applied_to_q(self):
        p = expand(parse("q"))
        for side in Side:
            assert apply_pde_system(pde_system_matrix(side), p) == const(Quaternion.real(-2))

    def test_matches_symbolic_operator(self):
        rng = random.Random(12)
        for _ in range(100):
            p = expand(random_poly_expr(rng), Mode.EXACT)
            for side in Side:
                assert apply_pde_system(pde_system_matrix(side), p) == fueter_symbolic(p, side)

    def test_same_shape_as_multiplication_matrix(self):
        # the index of the derivative in entry (r, c) is the unit whose product with e_c lands on r
        from quatkit.quaternion import left_mul_matrix

        m = pde_system_matrix(Side.LEFT)
        for t in range(4):
            lm = left_mul_matrix(Quaternion.unit(t))
            for r in range(4):
                for c in range(4):
                    if lm[r][c] != 0:
                        assert m[r][c] == PartialOp(int(lm[r][c]), t)

    def test_left_right_difference_pattern(self):
        left, right = pde_system_matrix(Side.LEFT), pde_system_matrix(Side.RIGHT)
        differ = {(r, c) for r in range(4) for c in range(4) if left[r][c] != right[r][c]}
        assert differ == {(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)}
        for r, c in differ:
            assert left[r][c].index == right[r][c].index
            assert left[r][c].sign == -right[r][c].sign

    def test_render(self):
        assert render_operator_matrix(pde_system_matrix(Side.LEFT)).splitlines()[0].split() == ["+d0", "-d1", "-d2", "-d3"]
