from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepkit.errors import (
    BadFieldElement,
    DivisionByZero,
    FieldMismatch,
    InvalidNumberField,
    ZeroElement,
)
from sepkit.exactfield import (
    FieldElement,
    NumberField,
    format_rational,
    fraction_free_rank,
    is_root_of_unity,
    parse_rational,
    rational_span_dimension,
    unity_candidates,
)

from oracles import fraction_rank

QQ = NumberField((Fraction(0),))
GAUSS = NumberField((Fraction(1), Fraction(0)))  # x^2 + 1
SQRT2 = NumberField((Fraction(-2), Fraction(0)))  # x^2 - 2
SQRT21 = NumberField((Fraction(-21), Fraction(0)))  # x^2 - 21
ZETA3 = NumberField((Fraction(1), Fraction(1)))  # x^2 + x + 1


rationals = st.fractions(
    max_denominator=50,
    min_value=Fraction(-50),
    max_value=Fraction(50),
)


def elements(field):
    return st.builds(
        lambda coeffs: field.element(coeffs),
        st.lists(rationals, min_size=field.degree, max_size=field.degree),
    )


class TestParseRational:
    def test_accepts_int_and_strings(self):
        assert parse_rational(3) == 3
        assert parse_rational("-7/2") == Fraction(-7, 2)
        assert parse_rational("0") == 0

    def test_rejects_floats_and_junk(self):
        for bad in (1.5, "1.5", "a", None, [], "3/0"):
            with pytest.raises(BadFieldElement):
                parse_rational(bad)

    def test_format_round_trip(self):
        for q in (Fraction(0), Fraction(-7, 2), Fraction(11)):
            assert parse_rational(format_rational(q)) == q


class TestNumberField:
    def test_rejects_degree_zero(self):
        with pytest.raises(InvalidNumberField):
            NumberField(())

    def test_rejects_non_squarefree(self):
        # x^2 + 2x + 1 = (x + 1)^2
        with pytest.raises(InvalidNumberField):
            NumberField((Fraction(1), Fraction(2)))

    def test_rejects_rational_root(self):
        # x^2 - 1 has the root 1
        with pytest.raises(InvalidNumberField):
            NumberField((Fraction(-1), Fraction(0)))
        # x^2 - x - 2 has the root 2
        with pytest.raises(InvalidNumberField):
            NumberField((Fraction(-2), Fraction(-1)))

    def test_degree_one_is_plain_rationals(self):
        e = QQ.from_rational(Fraction(5, 3))
        assert e.rational_value() == Fraction(5, 3)
        assert (e * e).rational_value() == Fraction(25, 9)

    def test_alpha_satisfies_min_poly(self):
        for field in (GAUSS, SQRT2, ZETA3):
            a = field.alpha()
            m = a * a
            for power, c in enumerate(field.min_poly):
                m = m + a ** power * c
            assert m.is_zero

    def test_json_round_trip(self):
        obj = SQRT2.to_json()
        assert obj == {"min_poly": ["-2", "0"], "degree": 2}
        assert NumberField.from_json(obj) == SQRT2
        with pytest.raises(InvalidNumberField):
            NumberField.from_json({"min_poly": ["-2", "0"], "extra": 1})

    def test_parse_element_length_checked(self):
        with pytest.raises(BadFieldElement):
            SQRT2.parse_element(["1"])
        with pytest.raises(BadFieldElement):
            SQRT2.parse_element(["1", "2", "3"])
        with pytest.raises(BadFieldElement):
            SQRT2.parse_element("12")
        e = SQRT2.parse_element(["-1/2", "3"])
        assert e.coeffs == (Fraction(-1, 2), Fraction(3))


class TestArithmetic:
    def test_camacho_root_lives_in_sqrt21(self):
        # (-11 + sqrt(21)) / 10 is a root of 5 t^2 + 11 t + 5
        u = SQRT21.element([Fraction(-11, 10), Fraction(1, 10)])
        value = u * u * 5 + u * 11 + 5
        assert value.is_zero

    def test_string_rendering(self):
        assert str(SQRT2.element([Fraction(1, 2), Fraction(-3)])) == "1/2 - 3*a"
        assert str(SQRT2.element([Fraction(2), Fraction(1, 3)])) == "2 + 1/3*a"
        assert str(-SQRT2.alpha()) == "-a"
        assert str(QQ.from_rational(Fraction(-2, 7))) == "-2/7"
        assert str(GAUSS.zero()) == "0"
        assert str(GAUSS.alpha()) == "a"

    def test_mixed_operand_coercion(self):
        a = SQRT2.alpha()
        assert a * Fraction(1, 2) + 1 == SQRT2.element([1, Fraction(1, 2)])
        assert 1 - a == SQRT2.element([1, -1])
        assert (2 * a) / 2 == a

    def test_field_mismatch_rejected(self):
        with pytest.raises(FieldMismatch):
            SQRT2.alpha() + GAUSS.alpha()

    def test_zero_division(self):
        with pytest.raises(DivisionByZero):
            SQRT2.zero().inverse()
        with pytest.raises(DivisionByZero):
            SQRT2.one() / SQRT2.zero()

    @given(elements(SQRT2))
    def test_inverse_multiplies_to_one(self, e):
        if e.is_zero:
            return
        assert e * e.inverse() == SQRT2.one()

    @given(elements(GAUSS), elements(GAUSS), elements(GAUSS))
    def test_ring_identities(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a
        assert a * b == b * a

    def test_pow(self):
        i = GAUSS.alpha()
        assert i ** 2 == GAUSS.from_rational(-1)
        assert i ** 0 == GAUSS.one()
        assert i ** -1 == -i
        assert i ** -3 == i
        a = SQRT2.alpha()
        assert a ** 4 == SQRT2.from_rational(4)
        assert (a ** -2) * (a ** 2) == SQRT2.one()

    def test_element_json_is_plain_array(self):
        e = SQRT2.element([Fraction(1, 2), Fraction(-3)])
        assert e.to_json() == ["1/2", "-3"]
        assert SQRT2.parse_element(e.to_json()) == e


class TestRootsOfUnity:
    def test_candidate_orders_degree_two(self):
        assert set(unity_candidates(2)) == {1, 2, 3, 4, 6}

    def test_candidate_orders_degree_one(self):
        assert set(unity_candidates(1)) == {1, 2}

    def test_classical_orders(self):
        assert is_root_of_unity(GAUSS.one()) == 1
        assert is_root_of_unity(GAUSS.from_rational(-1)) == 2
        assert is_root_of_unity(GAUSS.alpha()) == 4
        assert is_root_of_unity(-GAUSS.alpha()) == 4
        assert is_root_of_unity(ZETA3.alpha()) == 3
        assert is_root_of_unity(-ZETA3.alpha()) == 6

    def test_non_units(self):
        assert is_root_of_unity(GAUSS.from_rational(2)) is None
        assert is_root_of_unity(SQRT2.alpha()) is None
        assert is_root_of_unity(GAUSS.one() + GAUSS.alpha()) is None

    def test_camacho_holonomy_is_not_torsion(self):
        field = NumberField((Fraction(1), Fraction(11, 5)))
        h = field.element([8, 5])
        assert is_root_of_unity(h) is None

    def test_zero_rejected(self):
        with pytest.raises(ZeroElement):
            is_root_of_unity(GAUSS.zero())


class TestRank:
    def test_known_integer_ranks(self):
        assert fraction_free_rank([[1, 2], [2, 4]]) == 1
        assert fraction_free_rank([[1, 2], [3, 4]]) == 2
        assert fraction_free_rank([[0, 0], [0, 0]]) == 0
        assert fraction_free_rank([[0, 1], [1, 0], [1, 1]]) == 2
        assert fraction_free_rank([]) == 0

    @given(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=3, max_size=3),
            min_size=1,
            max_size=5,
        )
    )
    @settings(max_examples=200)
    def test_matches_gaussian_oracle(self, rows):
        expected = fraction_rank([[Fraction(v) for v in row] for row in rows])
        assert fraction_free_rank(rows) == expected

    def test_span_dimension(self):
        a = SQRT2.alpha()
        one = SQRT2.one()
        assert rational_span_dimension([]) == 0
        assert rational_span_dimension([SQRT2.zero()]) == 0
        assert rational_span_dimension([one, one * 2]) == 1
        assert rational_span_dimension([one, a]) == 2
        assert rational_span_dimension([one, a, one + a]) == 2
        # denominators are cleared exactly
        assert rational_span_dimension(
            [SQRT2.element([Fraction(1, 3), Fraction(1, 7)])]
        ) == 1

    def test_span_requires_single_field(self):
        with pytest.raises(FieldMismatch):
            rational_span_dimension([SQRT2.one(), GAUSS.one()])

    @given(st.lists(elements(GAUSS), min_size=1, max_size=6))
    @settings(max_examples=150)
    def test_span_matches_oracle(self, elems):
        expected = fraction_rank([[Fraction(c) for c in e.coeffs] for e in elems])
        assert rational_span_dimension(elems) == expected
        assert rational_span_dimension(elems) <= GAUSS.degree

    def test_span_oracle_across_degrees(self):
        import random

        cube2 = NumberField((Fraction(-2), Fraction(0), Fraction(0)))
        quart2 = NumberField(
            (Fraction(-2), Fraction(0), Fraction(0), Fraction(0))
        )
        fields = (QQ, GAUSS, SQRT2, cube2, quart2)
        for seed in range(500):
            rng = random.Random(seed)
            field = fields[seed % len(fields)]
            elems = [
                field.element([
                    Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                    for _ in range(field.degree)
                ])
                for _ in range(rng.randint(0, 8))
            ]
            expected = fraction_rank(
                [[Fraction(c) for c in e.coeffs] for e in elems]
            )
            assert rational_span_dimension(elems) == expected
            assert expected <= min(len(elems), field.degree)
