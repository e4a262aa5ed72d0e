import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatkit.errors import ExponentOverflowError, ExprError, LexError, ModeMismatchError, ParseError
from quatkit.expr import (
    Component,
    Conj,
    Const,
    Neg,
    Pow,
    Prod,
    Sum,
    VarQ,
    as_function,
    evaluate,
    parse,
    point,
    render,
    series,
    tokenize,
)
from quatkit.quaternion import Quaternion
from quatkit.scalar import Mode

ONE, I, J, K = (Quaternion.unit(t) for t in range(4))


def c(q):
    return Const(q)


class TestParse:
    def test_commutator(self):
        assert parse("i*j - j*i") == Sum(Prod((c(I), c(J))), Neg(Prod((c(J), c(I)))))

    def test_zero_divisor_expression(self):
        assert parse("(1+k)*(1-k)") == Prod((Sum(c(ONE), c(K)), Sum(c(ONE), Neg(c(K)))))

    def test_let_bindings(self):
        assert parse("a*q*b*q where a=i, b=j") == Prod((c(I), VarQ(), c(J), VarQ()))

    def test_binding_may_use_earlier_binding(self):
        assert parse("b where a=i, b=a*a") == Prod((c(I), c(I)))

    def test_components_and_conj(self):
        assert parse("q0 + conj(q)") == Sum(Component(0), Conj(VarQ()))

    def test_power_and_unary_minus(self):
        assert parse("-q^2") == Neg(Pow(VarQ(), 2))
        assert parse("i * -j") == Prod((c(I), Neg(c(J))))

    def test_numbers(self):
        assert parse("1/2") == c(Quaternion(Fraction(1, 2), 0, 0, 0))
        assert parse("0.25") == c(Quaternion(Fraction(1, 4), 0, 0, 0))
        assert parse("0.25", Mode.FLOAT) == c(Quaternion(0.25, 0.0, 0.0, 0.0))
        assert parse("1e-3", Mode.FLOAT) == c(Quaternion(1e-3, 0.0, 0.0, 0.0))

    def test_whitespace_insignificant(self):
        assert parse(" q *\tconj( q ) ") == parse("q*conj(q)")

    def test_spans(self):
        e = parse("q + conj(q)")
        assert e.right.span == (4, 11)

    @pytest.mark.parametrize(
        "text, pos",
        [
            ("2i", 1),
            ("q +", 3),
            ("(q", 2),
            ("q)", 1),
            ("conj q", 5),
            ("q^x", 2),
            ("q^1.5", 2),
            ("a*q", 0),
            ("q where i=1", 8),
            ("q where a=1, a=2", 13),
            ("", 0),
        ],
    )
    def test_syntax_errors_are_positioned(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.pos == pos

    def test_lex_errors(self):
        with pytest.raises(LexError) as info:
            parse("q / 2")
        assert info.value.pos == 2
        with pytest.raises(LexError):
            parse("1/0")

    def test_exponent_overflow(self):
        assert parse("q^64") == Pow(VarQ(), 64)
        with pytest.raises(ExponentOverflowError):
            parse("q^65")
        with pytest.raises(ExponentOverflowError):
            parse("q^1099511627776")

    def test_error_message_shows_caret(self):
        with pytest.raises(ParseError) as info:
            parse("q + + q")
        assert "position 4" in str(info.value)
        assert "    ^" in str(info.value)

    def test_deep_nesting_is_an_error_not_a_crash(self):
        with pytest.raises(ParseError):
            parse("(" * 5000 + "q" + ")" * 5000)
        with pytest.raises(ParseError):
            parse("-" * 5000 + "q")

    def test_tokenize(self):
        kinds = [t.kind for t in tokenize("q0*3/4")]
        assert kinds == ["name", "op", "number", "eof"]


_ALPHABET = ["q", "q0", "q3", "i", "j", "k", "1", "2/3", "0.5", "+", "-", "*", "^", "2", "(", ")",
             "conj", "conj(", "where", "a", "=", ",", " ", "/", "$", "65", "x"]


def test_fuzz_parser_total():
    rng = random.Random(99)
    parsed = failed = 0
    for _ in range(10_000):
        text = "".join(rng.choice(_ALPHABET) for _ in range(rng.randint(0, 12)))
        try:
            parse(text)
            parsed += 1
        except ExprError as exc:
            assert exc.pos is not None and 0 <= exc.pos <= len(text)
            failed += 1
    assert parsed > 0 and failed > 0


@given(st.text(max_size=40))
def test_parser_never_crashes_on_arbitrary_text(text):
    try:
        parse(text)
    except ExprError as exc:
        assert exc.pos is not None


class TestEvaluate:
    def test_square_of_i(self):
        assert evaluate(parse("q^2"), I) == -ONE

    def test_one_plus_k_times_one_minus_k_in_h(self):
        # 1 - k^2 = 1 - (-1): the zero-divisor outcome only happens in the ji=+k table
        assert evaluate(parse("(1+k)*(1-k)"), Quaternion(3, 1, 4, 1)) == Quaternion(2, 0, 0, 0)

    def test_exp_series_at_zero(self):
        from math import factorial

        s = series([Quaternion.real(Fraction(1, factorial(n))) for n in range(21)])
        assert s.N == 20
        assert evaluate(s, Quaternion.zero()) == ONE

    def test_series_keeps_coefficients_left(self):
        s = series([Quaternion.zero(), K])
        assert evaluate(s, I) == K * I

    def test_components(self):
        q = Quaternion(1, 2, 3, 4)
        assert evaluate(parse("q0 + q1*i + q2*j + q3*k"), q) == q
        assert evaluate(parse("q*conj(q)"), q) == Quaternion(30, 0, 0, 0)

    def test_mode_mismatch(self):
        with pytest.raises(ModeMismatchError):
            evaluate(parse("q + i"), Quaternion(0.5, 0.0, 0.0, 0.0))

    def test_as_function_converts_constants(self):
        f = as_function(parse("1/3*q"))
        assert f(Quaternion(3.0, 0.0, 0.0, 0.0)).w == pytest.approx(1.0)

    def test_point(self):
        assert point(["1", "2/3", "0", "-1"]) == Quaternion(1, Fraction(2, 3), 0, -1)
        with pytest.raises(ValueError):
            point(["1", "2"])

    def test_render_reparses(self):
        rng = random.Random(5)
        for text in ["i*j - j*i", "a*q*b*q where a=1/2+i, b=j", "-conj(q)^3 + q1", "(q-k)*(q+k)^2"]:
            e = parse(text)
            again = parse(render(e))
            for _ in range(5):
                q = Quaternion(*(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)))
                assert evaluate(again, q) == evaluate(e, q)
