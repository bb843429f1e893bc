from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctpow.laurent import (LaurentError, from_polytope, make_polynomial,
                           normalize, parse_laurent, polynomial_from_json,
                           polynomial_to_json, sort_variables_by_degree,
                           to_expr_string, total_weight)


def test_parse_simple_sum():
    h = parse_laurent("X + X^-1")
    assert h.variables == ("X",)
    assert h.terms == ((1, (-1,)), (1, (1,)))


def test_parse_coefficients_and_signs():
    h = parse_laurent("3*X^2*Y^-1 - 2*Y + 5")
    assert h.variables == ("X", "Y")
    assert set(h.terms) == {(3, (2, -1)), (-2, (0, 1)), (5, (0, 0))}


def test_parse_merges_duplicates():
    h = parse_laurent("X + X + 2*X - X")
    assert h.terms == ((3, (1,)),)


def test_parse_cancellation_gives_zero():
    h = parse_laurent("X - X")
    assert h.terms == ()
    assert to_expr_string(h) == "0"


def test_parse_whitespace_tolerant():
    assert parse_laurent("  X +\tY ").terms == parse_laurent("X+Y").terms


def test_parse_rejects_float_literal():
    with pytest.raises(LaurentError, match="non-integer literal"):
        parse_laurent("1.5*X")


def test_parse_rejects_garbage():
    with pytest.raises(LaurentError):
        parse_laurent("X + @Y")
    with pytest.raises(LaurentError):
        parse_laurent("X ^ Y")
    with pytest.raises(LaurentError):
        parse_laurent("")


def test_json_accepts_string_and_int_coefficients():
    obj = {"variables": ["X"],
           "terms": [{"c": "12", "e": [1]}, {"c": -3, "e": [0]}]}
    h = polynomial_from_json(obj)
    assert set(h.terms) == {(12, (1,)), (-3, (0,))}


def test_json_rejects_floats_and_bools():
    with pytest.raises(LaurentError):
        polynomial_from_json(
            {"variables": ["X"], "terms": [{"c": 1.5, "e": [1]}]})
    with pytest.raises(LaurentError):
        polynomial_from_json(
            {"variables": ["X"], "terms": [{"c": True, "e": [1]}]})


def _poly_strategy(max_vars=3):
    def build(nvars, raw):
        variables = tuple(f"X{i+1}" for i in range(nvars))
        terms = [(c, tuple(e[:nvars])) for c, e in raw]
        return make_polynomial(variables, terms)
    return st.integers(1, max_vars).flatmap(
        lambda n: st.lists(
            st.tuples(st.integers(-9, 9),
                      st.lists(st.integers(-3, 3), min_size=n, max_size=n)
                      .map(tuple)),
            min_size=0, max_size=6).map(lambda raw: build(n, raw)))


def _named_terms(h):
    # order-free view: {(coeff, ((var, exp), ...)), ...} without zero exponents
    return {(c, tuple(sorted((v, k) for v, k in zip(h.variables, e) if k)))
            for c, e in h.terms}


@given(_poly_strategy())
@settings(max_examples=80)
def test_expr_string_roundtrip(h):
    # the printed form drops unused variables and reorders terms, so compare
    # the named-exponent view
    back = parse_laurent(to_expr_string(h), "expr")
    assert _named_terms(back) == _named_terms(h)


@given(_poly_strategy())
@settings(max_examples=80)
def test_json_roundtrip(h):
    back = polynomial_from_json(polynomial_to_json(h))
    assert back.variables == h.variables
    assert back.terms == h.terms


def test_normalize_shift_and_degrees():
    h = parse_laurent("X^-2 + Y + X*Y^-1")
    nf = normalize(h)
    assert nf.shift == (2, 1)
    assert nf.degrees == (3, 2)
    # cleared tensor holds the shifted exponents
    assert nf.tensor[(0, 1)] == 1   # X^-2 -> X^0 Y^1
    assert nf.tensor[(2, 2)] == 1   # Y    -> X^2 Y^2
    assert nf.tensor[(3, 0)] == 1   # X/Y  -> X^3 Y^0


def test_normalize_no_negative_exponents_is_identity_shift():
    nf = normalize(parse_laurent("X^2 + X*Y"))
    assert nf.shift == (0, 0)
    assert nf.degrees == (2, 1)


def test_evaluate_with_fractions():
    h = parse_laurent("X + X^-1")
    assert h.evaluate([Fraction(2)]) == Fraction(5, 2)


def test_total_weight_sums_absolute_values():
    assert total_weight(parse_laurent("3*X - 2 + X^-1")) == 6


def test_from_polytope_unit_simplex():
    h = from_polytope([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0),
                       (0, 0, 0, 1), (-1, -1, -1, -1)])
    assert h.variables == ("X", "Y", "Z", "T")
    assert len(h.terms) == 5
    assert all(c == 1 for c, _ in h.terms)


def test_from_polytope_rejects_duplicates():
    with pytest.raises(LaurentError):
        from_polytope([(1, 0), (1, 0), (0, 1)])


def test_from_polytope_rejects_mixed_dimensions():
    with pytest.raises(LaurentError):
        from_polytope([(1, 0), (0, 1, 2)])


def test_sort_variables_by_degree_descending_span():
    h = parse_laurent("X + Y^3 + Y^-1 + Z^2")
    g = sort_variables_by_degree(h)
    nf = normalize(g)
    assert list(nf.degrees) == sorted(nf.degrees, reverse=True)
    # same polynomial, relabeled axes
    assert total_weight(g) == total_weight(h)
    assert sorted(g.variables) == sorted(h.variables)
