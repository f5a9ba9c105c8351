import pytest

from eqpsg import factor, numsg, presburger
from eqpsg.errors import (
    ParseError,
    QuantifiedParameterError,
    UnboundVariableError,
    UnknownBuiltinError,
)
from eqpsg.polyfam import parse_family_inline, parse_poly
from eqpsg.presburger import (
    And,
    Atom,
    Exists,
    Implies,
    Not,
    builtin_formula,
    define_set,
    evaluate,
    free_vars,
    parse_formula,
    render,
    suggested_window,
)


def test_parse_even_parameter_example():
    f = parse_formula("E z (2*z = n)")
    assert isinstance(f, Exists)
    assert evaluate(f, 6, {}, 10) == (True, "exact")
    assert evaluate(f, 7, {}, 10) == (False, "exact")


def test_parse_simple_atom():
    f = parse_formula("x >= 0")
    assert isinstance(f, Atom)
    assert free_vars(f) == {"x"}
    assert evaluate(f, 0, {"x": 3}, 10)[0]
    assert not evaluate(f, 0, {"x": -1}, 10)[0]


def test_quantified_parameter_rejected():
    with pytest.raises(QuantifiedParameterError):
        parse_formula("E n (n = 2)")
    with pytest.raises(QuantifiedParameterError):
        parse_formula("A z (E n (n*z <= 0))")


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as err:
        parse_formula("x + <= 3")
    assert err.value.position > 0
    with pytest.raises(ParseError):
        parse_formula("x * y <= 3")  # nonlinear
    with pytest.raises(ParseError):
        parse_formula("x <= 3 )")


def test_connective_precedence_and_grouping():
    f = parse_formula("x <= 1 & x >= 0 -> x = 0 | x = 1")
    assert isinstance(f, Implies)
    g = parse_formula("!(x <= 1) & x <= 5")
    assert isinstance(g, And) and isinstance(g.items[0], Not)


def test_polynomial_coefficients_in_atoms():
    f = parse_formula("(n^2+1)*z + 4n <= 2n^2")
    assert evaluate(f, 3, {"z": 0}, 5) == (True, "exact")  # 12 <= 18
    assert evaluate(f, 3, {"z": 1}, 5)[0] is False  # 10 + 12 > 18


def test_unbound_variable():
    f = parse_formula("x <= 3")
    with pytest.raises(UnboundVariableError):
        evaluate(f, 0, {}, 5)


def test_render_parse_round_trip():
    formulas = [
        "E z (2*z = n)",
        "x >= 0",
        "A z (!(z <= 3) -> z >= 4)",
        "E a (E b (3*a + 5*b = x & a >= 0 & b >= 0))",
        "x <= 1 & x >= 0 -> x = 0 | x = 1",
        "(n^2+1)*z + 4n <= 2n^2",
        "x != 2",
    ]
    for text in formulas:
        f = parse_formula(text)
        assert parse_formula(render(f)) == f, text


def test_forall_via_negated_exists():
    f = parse_formula("A z (z*0 <= 0)")
    assert evaluate(f, 0, {}, 4)[0]
    g = parse_formula("A z (z <= 100)")
    value, flag = evaluate(g, 0, {}, 10)
    assert value and flag == "window-limited"  # truncated: not certifiable


def test_exact_flag_is_window_monotone():
    texts = ["E z (2*z = n)", "E z (z >= 0 & z <= 5 & 3*z = n)"]
    for text in texts:
        f = parse_formula(text)
        for n in range(0, 12):
            value, flag = evaluate(f, n, {}, 8)
            if flag == "exact":
                for w in (16, 64, 256):
                    assert evaluate(f, n, {}, w)[0] == value


def test_define_set_basics():
    f = parse_formula("x <= 0 & x >= 1")
    assert define_set(f, 0, ["x"], 5) == set()
    g = parse_formula("x = x")
    assert define_set(g, 0, ["x"], 2) == {-2, -1, 0, 1, 2}
    h = parse_formula("x + y = 2")
    assert define_set(h, 0, ["x", "y"], 2) == {(0, 2), (1, 1), (2, 0)}
    with pytest.raises(UnboundVariableError):
        define_set(parse_formula("x + y = 2"), 0, ["x"], 2)


def test_membership_formula_of_the_semigroup():
    fam = parse_family_inline("3,5,7")
    member = builtin_formula("member", fam)
    view = numsg.build([3, 5, 7])
    for x in (4, 8, 0, 1, 12):
        value, flag = evaluate(member, 0, {"x": x}, 10)
        assert value == view.contains(x)
        assert flag == "exact"  # coefficients force bounded witnesses


def test_builtin_defined_sets_match_direct_algorithms():
    fam = parse_family_inline("3,5,7")
    view = numsg.build([3, 5, 7])
    window = 2 * (view.frobenius + max(view.gens))
    cases = {
        "member": {t for t in range(-window, window + 1) if view.contains(t)},
        "gcd": {1},
        "frobenius": {view.frobenius},
        "pf": set(numsg.pseudo_frobenius(view)),
        "fundamental_gap": set(numsg.fundamental_gaps(view)),
        "apery": set(numsg.apery_set(view, view.multiplicity)),
    }
    for name, expected in cases.items():
        got = define_set(builtin_formula(name, fam), 0, ["x"], window)
        assert got == expected, name


def test_builtin_parametric_instantiation():
    # the same formula object answers at every n
    fam = parse_family_inline("n+3,n+5,n+7")
    member = builtin_formula("member", fam)
    for n in (0, 2, 4):
        view = numsg.build([n + 3, n + 5, n + 7])
        for x in range(0, 30):
            assert evaluate(member, n, {"x": x}, 40)[0] == view.contains(x)


def test_builtin_symmetric_sentence():
    sym23 = builtin_formula("symmetric", parse_family_inline("2,3"))
    assert evaluate(sym23, 0, {}, 16)[0] is True
    sym357 = builtin_formula("symmetric", parse_family_inline("3,5,7"))
    assert evaluate(sym357, 0, {}, 16)[0] is False


def test_builtin_length_and_delta_formulas():
    fam = parse_family_inline("6,9,20")
    view = numsg.build([6, 9, 20])
    ls = builtin_formula("length_set", fam, element=parse_poly("60"))
    assert define_set(ls, 0, ["x"], 15) == set(factor.length_set(view, 60))
    de = builtin_formula("delta_elem", fam, element=parse_poly("60"))
    assert define_set(de, 0, ["x"], 15) == set(factor.delta_of_element(view, 60))
    with pytest.raises(ValueError):
        builtin_formula("length_set", fam)


def test_builtin_gcd_for_non_numerical():
    fam = parse_family_inline("4,6")
    got = define_set(builtin_formula("gcd", fam), 0, ["x"], 30)
    assert got == {2}


def test_unknown_builtin():
    with pytest.raises(UnknownBuiltinError):
        builtin_formula("genus", parse_family_inline("2,3"))


def test_suggested_window():
    f = parse_formula("(n^2)*z <= 4n")
    assert suggested_window(f, 3) == 4 * 12
