"""Canonical rational functions (the normal form every computation runs on)."""

from fractions import Fraction

from .atoms import Atom, coord
from .poly import Poly, exact_div, format_poly, gcd


class DivisionByZero(ZeroDivisionError):
    """A denominator normalized to the zero polynomial."""


class ArgumentViolation(ValueError):
    """A definition uses a coordinate outside its function's argument set."""


_ONE = Poly.const(1)


class NormalForm:
    """``num / den`` with gcd(num, den) = 1 and ``den`` monic.

    Equal rational functions have identical (num, den), so equality and
    hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = _ONE
        if den.is_zero():
            raise DivisionByZero("denominator is zero")
        if not _reduced and not den.is_one():
            if num.is_zero():
                den = _ONE
            elif den.is_constant():
                num = num.scale(1 / den.constant_value())
                den = _ONE
            else:
                g = gcd(num, den)
                if not g.is_one():
                    num = exact_div(num, g)
                    den = exact_div(den, g)
                lc = den.leading_coeff()
                if lc != 1:
                    num = num.scale(1 / lc)
                    den = den.scale(1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls(Poly.const(c), _ONE, True)

    @classmethod
    def atom(cls, a):
        return cls(Poly.from_atom(a), _ONE, True)

    @classmethod
    def coord(cls, i):
        return cls.atom(coord(i))

    @classmethod
    def lift(cls, value):
        if isinstance(value, NormalForm):
            return value
        if isinstance(value, Poly):
            return cls(value, _ONE, True)
        if isinstance(value, Atom):
            return cls.atom(value)
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        if hasattr(value, "normal_form"):
            return value.normal_form()
        raise TypeError(f"cannot convert {type(value).__name__} to NormalForm")

    def normal_form(self):
        return self

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self):
        return self.num.constant_value()

    def atoms(self):
        return self.num.atoms() | self.den.atoms()

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = NormalForm.lift(other)
        if self.den.is_one() and other.den.is_one():
            return NormalForm(self.num + other.num, _ONE, True)
        if self.den == other.den:
            return NormalForm(self.num + other.num, self.den)
        if other.den.is_one():
            # gcd(n1 + n2 d1, d1) = gcd(n1, d1) = 1
            return NormalForm(self.num + other.num * self.den, self.den, True)
        if self.den.is_one():
            return NormalForm(other.num + self.num * other.den, other.den, True)
        g = gcd(self.den, other.den)
        if g.is_one():
            # coprime denominators: the cross sum is already reduced
            return NormalForm(
                self.num * other.den + other.num * self.den, self.den * other.den, True
            )
        d1, d2 = exact_div(self.den, g), exact_div(other.den, g)
        return NormalForm(self.num * d2 + other.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return NormalForm(-self.num, self.den, True)

    def __sub__(self, other):
        return self + (-NormalForm.lift(other))

    def __rsub__(self, other):
        return NormalForm.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return NormalForm.const(0)
            return NormalForm(self.num.scale(other), self.den, True)
        other = NormalForm.lift(other)
        if self.den.is_one() and other.den.is_one():
            return NormalForm(self.num * other.num, _ONE, True)
        return _reduced_product(self.num, self.den, other.num, other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = NormalForm.lift(other)
        if other.is_zero():
            raise DivisionByZero("division by an expression that normalizes to zero")
        lc = other.num.leading_coeff()
        return _reduced_product(
            self.num, self.den, other.den.scale(1 / lc), other.num.scale(1 / lc)
        )

    def __rtruediv__(self, other):
        return NormalForm.lift(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n >= 0:
            return NormalForm(self.num ** n, self.den ** n, True)
        if self.is_zero():
            raise DivisionByZero("negative power of zero")
        return NormalForm(self.den ** -n, self.num ** -n)

    # -- calculus -------------------------------------------------------------------

    def diff(self, i):
        dn = self.num.diff(i)
        if self.den.is_one():
            return NormalForm(dn, _ONE, True)
        dd = self.den.diff(i)
        if dd.is_zero():
            return NormalForm(dn, self.den)
        # (n' d - n d') / d^2 shares the factor gcd(d, d') with d^2
        g = gcd(self.den, dd)
        if g.is_one():
            return NormalForm(dn * self.den - self.num * dd, self.den * self.den)
        dg = exact_div(self.den, g)
        return NormalForm(dn * dg - self.num * exact_div(dd, g), self.den * dg)

    def subs(self, values):
        """Replace atoms by NormalForms; atoms absent from ``values`` stay."""
        full = _Lookup(values)
        num = self.num.evaluate(full, NormalForm.const(1))
        if self.den.is_one():
            return num
        return num / self.den.evaluate(full, NormalForm.const(1))

    # -- dunder ---------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NormalForm.const(other)
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        num = format_poly(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({format_poly(self.den)})"

    def __repr__(self):
        return f"NormalForm({self})"


def _reduced_product(n1, d1, n2, d2):
    """(n1/d1) (n2/d2) for reduced inputs with monic d1; only cross gcds are needed."""
    if n1.is_zero() or n2.is_zero():
        return NormalForm(Poly(), _ONE, True)
    g1 = gcd(n1, d2)
    g2 = gcd(n2, d1)
    if not g1.is_one():
        n1, d2 = exact_div(n1, g1), exact_div(d2, g1)
    if not g2.is_one():
        n2, d1 = exact_div(n2, g2), exact_div(d1, g2)
    num, den = n1 * n2, d1 * d2
    lc = den.leading_coeff()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return NormalForm(num, den, True)


class _Lookup(dict):
    def __missing__(self, atom):
        return NormalForm.atom(atom)


ZERO = NormalForm.const(0)
ONE = NormalForm.const(1)
