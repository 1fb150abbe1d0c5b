import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import RESTRICTED_ATOMS, polynomial_exprs, rational_exprs
from walkercurv.exprparse import (
    GENERAL,
    RESTRICTED,
    ArityOrArgumentViolation,
    DuplicateDefinition,
    ParseError,
    UnknownSymbol,
    parse,
    parse_expression,
    parse_normal,
    render,
)
from walkercurv.symcore import ArgumentViolation, DivisionByZero, NormalForm, jet, normalize


def test_restricted_example_definition():
    spec = parse("func b(x3,x4) = 1/(2 - x3/2 - x4/2)\nfunc c(x3,x4) = 0\n")
    assert spec.mode == RESTRICTED
    assert normalize(spec.definitions["b"]) == parse_normal("2/(4 - x3 - x4)")
    assert spec.defaulted == ["d"]
    assert spec.is_concrete()


def test_flat_general_spec():
    spec = parse("func a(x1,x2,x3,x4) = 0")
    assert spec.mode == GENERAL
    assert normalize(spec.definitions["a"]).is_zero()


def test_arbitrary_declaration():
    spec = parse("# comment\nfunc a(x1,x2,x3,x4)   # arbitrary\n")
    assert not spec.is_concrete()
    assert spec.definitions == {}


def test_argument_violation_is_positioned():
    with pytest.raises(ArityOrArgumentViolation) as info:
        parse("func b(x3,x4) = x1\nfunc c(x3,x4)")
    assert isinstance(info.value, ArgumentViolation)
    assert info.value.line == 1 and info.value.col == 17


@pytest.mark.parametrize(
    "text, cls",
    [
        ("func a(x1,x2,x3,x4) = 1 +", ParseError),
        ("func a(x1,x2,x3,x4) = q", UnknownSymbol),
        ("func e(x1)", UnknownSymbol),
        ("func b(x3)", ArityOrArgumentViolation),
        ("func b(x3,x3)", ArityOrArgumentViolation),
        ("func a(x1,x2,x3,x4)\nfunc a(x1,x2,x3,x4)", DuplicateDefinition),
        ("func a(x1,x2,x3,x4)\nfunc b(x3,x4)\nfunc c(x3,x4)", ParseError),
        ("func b(x3,x4) = 1", ParseError),
        ("func a(x1,x2,x3,x4) = a", ParseError),
        ("func a(x1,x2,x3,x4) = 1/(x1 - x1)", ParseError),
        ("func a(x1,x2,x3,x4) = x1^100", ParseError),
        ("func a(x1,x2,x3,x4) = x1^x2", ParseError),
        ("func b(x3,x4) = c\nfunc c(x3,x4)", ParseError),
        ("func b(x3,x4) = b_1\nfunc c(x3,x4)", ParseError),
        ("set only = 1", ParseError),
        ("hello", ParseError),
        ("", ParseError),
    ],
)
def test_parse_errors(text, cls):
    with pytest.raises(cls):
        parse(text)


def test_definitions_may_use_earlier_functions():
    spec = parse("func b(x3,x4) = x3\nfunc c(x3,x4) = b^2 + b_3")
    assert normalize(spec.bindings()["c"]).atoms() == {jet("b", (3, 4)), jet("b", (3, 4), (3,))}


def test_options():
    spec = parse("set label = demo\nfunc a(x1,x2,x3,x4)")
    assert spec.options == {"label": "demo"}


def test_precedence_and_associativity():
    assert parse_normal("2^3^2") == NormalForm.const(512)
    assert parse_normal("-x1^2") == -parse_normal("x1*x1")
    assert parse_normal("8/4/2") == NormalForm.const(1)
    assert parse_normal("1 - 2 - 3") == NormalForm.const(-4)
    assert parse_normal("x1^-1") == parse_normal("1/x1")


def test_render_examples():
    assert render(parse_expression("a_13")) == "a_13"
    assert render(parse_expression("0")) == "0"
    r3434 = parse_normal("1/2*(2*a_33 + 2*a_44 - a*a_1^2 - a*a_2^2)")
    assert parse_normal(render(r3434)) == r3434


def test_bytes_input():
    assert parse(b"func a(x1,x2,x3,x4) = x1").mode == GENERAL
    with pytest.raises(ParseError):
        parse(b"\xff\xfe")


ROUND = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@ROUND
@given(polynomial_exprs(max_leaves=10))
def test_round_trip_polynomial(e):
    nf = normalize(e)
    assert parse_normal(render(nf)) == nf


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(rational_exprs(RESTRICTED_ATOMS, max_leaves=8))
def test_round_trip_rational(e):
    try:
        nf = normalize(e)
    except DivisionByZero:
        return
    assert parse_normal(render(nf), {"b": (3, 4), "c": (3, 4), "d": (3, 4)}) == nf


ALPHABET = "abcdx1234_+-*/^()=, \n#funcset.0123456789qz"


def _fuzz_once(text):
    try:
        parse(text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.col >= 1


@settings(max_examples=500, deadline=None)
@given(st.text(alphabet=ALPHABET, max_size=60))
def test_fuzz_text(text):
    _fuzz_once(text)


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=60))
def test_fuzz_bytes(data):
    _fuzz_once(data)


def fuzz_inputs(n, seed=7):
    """Random inputs biased toward almost-valid problem files."""
    rng = random.Random(seed)
    stems = [
        "func a(x1,x2,x3,x4) = ",
        "func b(x3,x4) = ",
        "func c(x3,x4) = ",
        "func d(x3,x4)",
        "set k = ",
        "",
    ]
    pieces = ["x1", "x3", "a_1", "b", "c_4", "(", ")", "+", "-", "*", "/", "^", "2", "0", " ", "\n", "#", "q"]
    for _ in range(n):
        if rng.random() < 0.1:
            yield bytes(rng.randrange(256) for _ in range(rng.randrange(30)))
            continue
        text = rng.choice(stems) + "".join(rng.choice(pieces) for _ in range(rng.randrange(12)))
        if rng.random() < 0.5:
            text += "\n" + rng.choice(stems) + "".join(rng.choice(pieces) for _ in range(rng.randrange(6)))
        yield text


def test_fuzz_corpus_no_crash():
    for text in fuzz_inputs(5000):
        _fuzz_once(text)
