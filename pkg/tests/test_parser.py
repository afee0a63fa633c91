import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dlpa_arg.dlpa import (
    TOP, And, AssignFalse, AssignTrue, Atom, Box, Choice, Converse, Diamond, Iff, Implies, Not,
    Or, Seq, att, aux, aw, in_, in_prime, parse_formula, parse_program, parse_var,
    print_formula, print_program,
)
from dlpa_arg.dlpa import Test as Guard
from dlpa_arg.errors import ParseError
from strategies import WIDE_POOL, formulas, programs

a_in = Atom(in_("a"))


def test_formula_examples():
    assert parse_formula("[+in(a)] in(a)") == Box(AssignTrue(in_("a")), a_in)
    assert parse_formula("<( -in(a) )^> in(a)") == Diamond(Converse(AssignFalse(in_("a"))), a_in)


def test_program_examples():
    assert parse_program("+aw(c) ; (att(c,b)? U skip)") == Seq(
        AssignTrue(aw("c")), Choice(Guard(Atom(att("c", "b"))), Guard(TOP))
    )
    assert parse_program("(+in(a))^") == Converse(AssignTrue(in_("a")))


def test_all_atom_kinds():
    assert parse_var("aw(x)") == aw("x")
    assert parse_var("in(x)") == in_("x")
    assert parse_var("in'(x)") == in_prime("x")
    assert parse_var("att(x, y_2)") == att("x", "y_2")
    assert parse_var("aux(12)") == aux(12)


def test_precedence():
    a, b, c = (Atom(aw(x)) for x in "abc")
    assert parse_formula("aw(a) & aw(b) | aw(c)") == Or((And((a, b)), c))
    assert parse_formula("aw(a) -> aw(b) -> aw(c)") == Implies(a, Implies(b, c))
    assert parse_formula("aw(a) | aw(b) -> aw(c) <-> aw(a)") == Iff(Implies(Or((a, b)), c), a)
    assert parse_formula("~aw(a) & aw(b)") == And((Not(a), b))
    assert parse_formula("[+aw(a)] aw(a) & aw(b)") == And((Box(AssignTrue(aw("a")), a), b))
    assert parse_formula("aw(a) & aw(b) & aw(c)") == And((a, b, c))


def test_program_precedence():
    p, q, r = (AssignTrue(aw(x)) for x in "abc")
    assert parse_program("+aw(a) ; +aw(b) U +aw(c)") == Choice(Seq(p, q), r)
    assert parse_program("+aw(a) ; +aw(b) ; +aw(c)") == Seq(p, Seq(q, r))
    assert parse_program("+aw(a)^^") == Converse(Converse(p))


def test_parenthesised_formula_test_in_program_position():
    prog = parse_program("(aw(a) & aw(b))? ; +aw(c)")
    assert prog == Seq(Guard(And((Atom(aw("a")), Atom(aw("b"))))), AssignTrue(aw("c")))
    assert parse_program("(aw(a))?") == Guard(Atom(aw("a")))


def test_whitespace_insensitive():
    assert parse_formula("  [ + aw( a ) ]\n\taw(a)") == parse_formula("[+aw(a)]aw(a)")


def test_unclosed_paren_error():
    with pytest.raises(ParseError) as e:
        parse_formula("in(a")
    err = e.value
    assert "')'" in err.expected
    assert err.found == ""
    # the error sits at end of input, one past the last character
    assert (err.span.line, err.span.column) == (1, 5)
    assert err.span.byte_start == err.span.byte_end == 4


def test_lone_semicolon_is_an_error():
    with pytest.raises(ParseError) as e:
        parse_program(";")
    assert e.value.found == ";"
    assert e.value.expected
    assert e.value.span.column == 1


def test_trailing_garbage():
    with pytest.raises(ParseError) as e:
        parse_formula("aw(a) aw(b)")
    assert e.value.span.column == 7


def test_error_reports_line_numbers():
    with pytest.raises(ParseError) as e:
        parse_formula("aw(a) &\n  &")
    assert (e.value.span.line, e.value.span.column) == (2, 3)


def test_unknown_names_accepted_at_parse_time():
    assert parse_formula("aw(zz9)") == Atom(aw("zz9"))


def test_printer_examples():
    f = Box(Seq(AssignTrue(aw("p")), AssignFalse(aw("q"))), TOP)
    assert print_formula(f) == "[+aw(p) ; -aw(q)] T"
    assert print_formula(Atom(att("a", "b"))) == "att(a,b)"
    nested = Iff(Iff(Atom(aw("a")), Atom(aw("b"))), Atom(aw("c")))
    assert parse_formula(print_formula(nested)) == nested
    right = Iff(Atom(aw("a")), Iff(Atom(aw("b")), Atom(aw("c"))))
    assert parse_formula(print_formula(right)) == right


def test_printer_uses_minimal_parentheses():
    assert print_formula(parse_formula("(aw(a) & aw(b)) | aw(c)")) == "aw(a) & aw(b) | aw(c)"
    assert print_program(parse_program("(+aw(a) ; +aw(b)) U skip")) == "+aw(a) ; +aw(b) U skip"


@settings(max_examples=1000)
@given(formulas(5, WIDE_POOL))
def test_formula_round_trip(f):
    assert parse_formula(print_formula(f)) == f


@settings(max_examples=300)
@given(programs(4, WIDE_POOL))
def test_program_round_trip(p):
    assert parse_program(print_program(p)) == p


TOKENS = ["aw(a)", "att(a,b)", "in'(b)", "(", ")", "[", "]", "<", ">", "&", "|", "->", "<->",
          "~", "+", "-", ";", "U", "^", "?", "T", "F", "skip", " ", "\n", "x", ",", "é"]


@given(st.lists(st.sampled_from(TOKENS), max_size=12).map("".join))
def test_error_spans_lie_within_input(text):
    for parse in (parse_formula, parse_program):
        try:
            parse(text)
        except ParseError as e:
            n = len(text.encode("utf-8"))
            assert 0 <= e.span.byte_start <= e.span.byte_end <= n
            assert e.span.line >= 1 and e.span.column >= 1
            assert e.expected
