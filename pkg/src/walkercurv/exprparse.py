"""Problem-file parser and expression renderer.

A problem file declares the unknown functions of a Walker metric, one per
line::

    # the Einstein example of the restricted family
    func b(x3,x4) = 1/(2 - x3/2 - x4/2)
    func c(x3,x4) = 1/(2 - x3/2 - x4/2)
    func d(x3,x4) = 0
    set label = einstein-example

A declaration without ``= expr`` leaves the function arbitrary. Inside
expressions ``a_13`` is the jet d1 d3 a, ``^`` takes integer exponents, and
``#`` starts a comment.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .symcore import (
    Add,
    ArgumentViolation,
    Const,
    Div,
    DivisionByZero,
    Leaf,
    Mul,
    Neg,
    NormalForm,
    Pow,
    Sub,
    coord,
    jet,
    normalize,
    symbol,
)

GENERAL = "general"
RESTRICTED = "restricted"

FUNCTION_ARGS = {"a": (1, 2, 3, 4), "b": (3, 4), "c": (3, 4), "d": (3, 4)}

MAX_EXPONENT = 32
MAX_DEPTH = 200


class ParseError(ValueError):
    """Malformed input; carries the offending offset and line/column."""

    def __init__(self, message, pos=0, text=""):
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.message = message
        super().__init__(f"line {self.line}, col {self.col}: {message}")


class UnknownSymbol(ParseError):
    pass


class ArityOrArgumentViolation(ParseError, ArgumentViolation):
    pass


class DuplicateDefinition(ParseError):
    pass


@dataclass
class ProblemSpec:
    mode: str
    declarations: dict
    definitions: dict
    options: dict = field(default_factory=dict)
    defaulted: list = field(default_factory=list)

    def is_concrete(self):
        return all(name in self.definitions for name in self.declarations)

    def bindings(self):
        """Definitions as NormalForms, keyed by function name."""
        return {name: normalize(e) for name, e in self.definitions.items()}


# -- tokenizer -------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),=])"
)


def _tokenize(text, start, end):
    pos = start
    out = []
    while pos < end:
        m = _TOKEN.match(text, pos, end)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", end))
    return out


# -- expression parser (precedence climbing) -----------------------------------

_BINARY = {"+": 1, "-": 1, "*": 2, "/": 2}


class _ExprParser:
    def __init__(self, text, tokens, functions, symbols, allowed=None, owner=None):
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.functions = functions
        self.symbols = symbols
        self.allowed = allowed
        self.owner = owner
        self.depth = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None, cls=ParseError):
        tok = tok or self.peek()
        return cls(message, tok[2], self.text)

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] not in ("op",):
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.advance()

    def parse(self):
        e = self.expr(0)
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self, min_prec):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")
        left = self.unary()
        while True:
            tok = self.peek()
            prec = _BINARY.get(tok[1]) if tok[0] == "op" else None
            if prec is None or prec < min_prec:
                break
            self.advance()
            right = self.expr(prec + 1)
            op = tok[1]
            if op == "+":
                left = Add((left, right))
            elif op == "-":
                left = Sub(left, right)
            elif op == "*":
                left = Mul((left, right))
            else:
                left = Div(left, right)
        self.depth -= 1
        return left

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise self.error("expression nested too deeply")
            operand = self.unary()
            self.depth -= 1
            return Neg(operand) if tok[1] == "-" else operand
        return self.power()

    def power(self):
        base = self.primary()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.advance()
            exp_tok = self.peek()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise self.error("expression nested too deeply")
            exp_expr = self.unary()
            self.depth -= 1
            try:
                value = exp_expr.normal_form()
            except DivisionByZero as exc:
                raise self.error(str(exc), exp_tok) from None
            if not value.is_constant() or value.constant_value().denominator != 1:
                raise self.error("exponent must be an integer constant", exp_tok)
            n = int(value.constant_value())
            if abs(n) > MAX_EXPONENT:
                raise self.error(f"exponent {n} exceeds the limit {MAX_EXPONENT}", exp_tok)
            return Pow(base, n)
        return base

    def primary(self):
        tok = self.advance()
        kind, value, pos = tok
        if kind == "num":
            return Const(Fraction(int(value)))
        if kind == "name":
            return Leaf(self.resolve(value, tok))
        if kind == "op" and value == "(":
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise self.error("expression nested too deeply", tok)
            inner = self.expr(0)
            self.depth -= 1
            self.expect(")")
            return inner
        raise self.error(f"unexpected {value or 'end of input'!r}", tok)

    def resolve(self, name, tok):
        m = re.fullmatch(r"x([0-9]+)", name)
        if m:
            i = int(m.group(1))
            if i not in (1, 2, 3, 4):
                raise self.error(f"unknown coordinate {name}", tok, UnknownSymbol)
            if self.allowed is not None and i not in self.allowed:
                raise self.error(
                    f"{self.owner} does not depend on {name}", tok, ArityOrArgumentViolation
                )
            return coord(i)
        if name in self.symbols:
            return symbol(name)
        fname, _, digits = name.partition("_")
        if fname not in self.functions or (_ and not digits.isdigit()):
            raise self.error(f"unknown symbol {name!r}", tok, UnknownSymbol)
        args = self.functions[fname]
        if fname == self.owner:
            raise self.error(f"{fname} refers to itself", tok)
        if self.allowed is not None and not set(args) <= set(self.allowed):
            raise self.error(
                f"{self.owner} cannot depend on {fname}", tok, ArityOrArgumentViolation
            )
        dmi = tuple(int(ch) for ch in digits)
        for i in dmi:
            if i not in args:
                raise self.error(
                    f"{fname} does not depend on x{i}", tok, ArityOrArgumentViolation
                )
        return jet(fname, args, dmi)


def parse_expression(text, functions=None, symbols=()):
    """Parse a single expression; jets resolve against ``functions``."""
    if functions is None:
        functions = FUNCTION_ARGS
    tokens = _tokenize(text, 0, len(text))
    return _ExprParser(text, tokens, functions, frozenset(symbols)).parse()


def parse_normal(text, functions=None, symbols=()):
    """Parse and normalize, reporting division by zero as a ParseError."""
    e = parse_expression(text, functions, symbols)
    try:
        return e.normal_form()
    except DivisionByZero as exc:
        raise ParseError(str(exc), 0, text) from None


# -- problem files -------------------------------------------------------------

_DECL = re.compile(r"\s*func\b")
_SET = re.compile(r"\s*set\b")


def parse(text):
    """Parse a problem file into a validated ``ProblemSpec``."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start, "") from None
    declarations = {}
    definitions = {}
    options = {}
    offset = 0
    for raw in text.split("\n"):
        start = offset
        offset += len(raw) + 1
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if _DECL.match(line):
            _parse_decl(text, start, line, declarations, definitions)
        elif _SET.match(line):
            body = line[_SET.match(line).end():]
            key, eq, value = body.partition("=")
            key = key.strip()
            if not eq or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_.-]*", key):
                raise ParseError("expected 'set key = value'", start, text)
            if key in options:
                raise DuplicateDefinition(f"option {key!r} set twice", start, text)
            options[key] = value.strip()
        else:
            lead = len(line) - len(line.lstrip())
            raise ParseError("expected 'func' or 'set'", start + lead, text)
    return _validate(text, declarations, definitions, options)


def _parse_decl(text, start, line, declarations, definitions):
    end = start + len(line)
    tokens = _tokenize(text, start, end)
    p = _ExprParser(text, tokens, {}, frozenset())
    p.advance()  # 'func'
    name_tok = p.advance()
    if name_tok[0] != "name":
        raise p.error("expected a function name", name_tok)
    name = name_tok[1]
    if name not in FUNCTION_ARGS:
        raise p.error(f"unknown function {name!r}; expected one of a, b, c, d", name_tok, UnknownSymbol)
    if name in declarations:
        raise p.error(f"{name} declared twice", name_tok, DuplicateDefinition)
    p.expect("(")
    args = []
    while True:
        tok = p.advance()
        m = re.fullmatch(r"x([1-4])", tok[1]) if tok[0] == "name" else None
        if m is None:
            raise p.error("expected a coordinate x1..x4", tok)
        i = int(m.group(1))
        if i in args:
            raise p.error(f"repeated argument x{i}", tok, ArityOrArgumentViolation)
        args.append(i)
        sep = p.advance()
        if sep[1] == ")":
            break
        if sep[1] != ",":
            raise p.error("expected ',' or ')'", sep)
    if tuple(sorted(args)) != FUNCTION_ARGS[name]:
        expected = ",".join(f"x{i}" for i in FUNCTION_ARGS[name])
        raise p.error(f"{name} must be declared as {name}({expected})", name_tok, ArityOrArgumentViolation)
    declarations[name] = FUNCTION_ARGS[name]
    if p.peek()[0] == "eof":
        return
    eq = p.expect("=")
    body = _ExprParser(
        text, tokens[p.i:], dict(declarations), frozenset(), FUNCTION_ARGS[name], name
    )
    if body.peek()[0] == "eof":
        raise body.error("missing expression after '='")
    expr = body.parse()
    try:
        expr.normal_form()
    except DivisionByZero as exc:
        raise ParseError(str(exc), eq[2], text) from None
    definitions[name] = expr


def _validate(text, declarations, definitions, options):
    general = "a" in declarations
    restricted = any(n in declarations for n in "bcd")
    if general and restricted:
        raise ParseError("declare either a, or b, c, d, not both", 0, text)
    if not general and not restricted:
        raise ParseError("no function declared; expected a, or b, c, d", len(text), text)
    defaulted = []
    if restricted:
        for n in "bc":
            if n not in declarations:
                raise ParseError(f"restricted family needs {n}(x3,x4)", len(text), text)
        if "d" not in declarations:
            declarations["d"] = FUNCTION_ARGS["d"]
            definitions["d"] = Const(Fraction(0))
            defaulted.append("d")
    mode = GENERAL if general else RESTRICTED
    return ProblemSpec(mode, declarations, definitions, options, defaulted)


# -- rendering -----------------------------------------------------------------


def render(e):
    """Text that re-parses to the same normal form."""
    return str(NormalForm.lift(e))
