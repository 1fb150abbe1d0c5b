"""Expression trees and the kernel operations on them.

Trees are what the parser produces; every operation converts to a
``NormalForm`` first and returns one, so callers can mix both freely.
"""

from dataclasses import dataclass
from fractions import Fraction

from .atoms import Atom
from .rational import ArgumentViolation, DivisionByZero, NormalForm


class Expr:
    def normal_form(self):
        raise NotImplementedError

    def __str__(self):
        from ..exprparse import render

        return render(self)


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def normal_form(self):
        return NormalForm.const(self.value)


@dataclass(frozen=True)
class Leaf(Expr):
    atom: Atom

    def normal_form(self):
        return NormalForm.atom(self.atom)


@dataclass(frozen=True)
class Add(Expr):
    args: tuple

    def normal_form(self):
        total = NormalForm.const(0)
        for a in self.args:
            total = total + a.normal_form()
        return total


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def normal_form(self):
        return self.left.normal_form() - self.right.normal_form()


@dataclass(frozen=True)
class Mul(Expr):
    args: tuple

    def normal_form(self):
        total = NormalForm.const(1)
        for a in self.args:
            total = total * a.normal_form()
        return total


@dataclass(frozen=True)
class Div(Expr):
    num: Expr
    den: Expr

    def normal_form(self):
        den = self.den.normal_form()
        if den.is_zero():
            raise DivisionByZero("denominator normalizes to zero")
        return self.num.normal_form() / den


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int

    def normal_form(self):
        return self.base.normal_form() ** self.exp


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def normal_form(self):
        return -self.arg.normal_form()


def normalize(e):
    """Canonical num/den pair of ``e`` (Expr, NormalForm, Atom or number)."""
    return NormalForm.lift(e)


def is_zero(e):
    return normalize(e).is_zero()


def diff(e, i):
    if i not in (1, 2, 3, 4):
        raise ValueError(f"coordinate index out of range: {i}")
    return normalize(e).diff(i)


def substitute(e, bindings):
    """Replace every jet of a bound function by the matching derivative.

    ``bindings`` maps function name -> expression. A binding may mention
    other bound functions as long as the dependency graph is acyclic.
    """
    bound = {name: normalize(v) for name, v in bindings.items()}
    resolved = {}

    def resolve(name, args, stack):
        if name in resolved:
            return resolved[name]
        if name in stack:
            raise ValueError(f"cyclic bindings through {name}")
        value = bound[name]
        for a in value.atoms():
            if a.is_coord and a.index not in args:
                raise ArgumentViolation(f"binding for {name} uses x{a.index}")
            if a.is_jet and not set(a.args) <= set(args):
                raise ArgumentViolation(
                    f"binding for {name} uses {a.name}, which depends on "
                    f"coordinates outside {name}'s arguments"
                )
        inner = {a: None for a in value.atoms() if a.is_jet and a.name in bound}
        if inner:
            stack = stack | {name}
            value = value.subs({a: jet_value(a, stack) for a in inner})
        resolved[name] = value
        return value

    jet_cache = {}

    def jet_value(a, stack=frozenset()):
        v = jet_cache.get(a)
        if v is None:
            v = resolve(a.name, a.args, stack)
            for i in a.dmi:
                v = v.diff(i)
            jet_cache[a] = v
        return v

    e = normalize(e)
    targets = {a: jet_value(a) for a in e.atoms() if a.is_jet and a.name in bound}
    if not targets:
        return e
    return e.subs(targets)
