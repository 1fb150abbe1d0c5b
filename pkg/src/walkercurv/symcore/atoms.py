"""Atoms: coordinates, jets of unknown functions, and auxiliary symbols."""

from typing import NamedTuple

COORDS = (1, 2, 3, 4)

_COORD, _JET, _SYMBOL = 0, 1, 2


class Atom(NamedTuple):
    """A single algebraically independent variable.

    Tuple comparison gives the canonical total order: coordinates
    x1 < x2 < x3 < x4, then jets ordered by (function name, derivative
    order, derivative multi-index), then auxiliary symbols by name.
    """

    kind: int
    name: str
    order: int
    dmi: tuple
    args: tuple

    def __str__(self):
        if self.kind == _COORD:
            return f"x{self.dmi[0]}"
        if self.kind == _JET and self.dmi:
            return self.name + "_" + "".join(map(str, self.dmi))
        return self.name

    __repr__ = __str__

    @property
    def is_coord(self):
        return self.kind == _COORD

    @property
    def is_jet(self):
        return self.kind == _JET

    @property
    def is_symbol(self):
        return self.kind == _SYMBOL

    @property
    def index(self):
        """Coordinate index of a coordinate atom."""
        return self.dmi[0]

    def prolong(self, i):
        """Jet of one derivative higher in direction ``i`` (None if it vanishes)."""
        if i not in self.args:
            return None
        return jet(self.name, self.args, self.dmi + (i,))


def coord(i):
    if i not in COORDS:
        raise ValueError(f"coordinate index out of range: {i}")
    return Atom(_COORD, "x", 0, (i,), ())


def jet(func, args, dmi=()):
    """Jet atom ``func_{dmi}``; ``dmi`` is sorted so mixed partials coincide."""
    args = tuple(sorted(args))
    dmi = tuple(sorted(dmi))
    for i in dmi:
        if i not in args:
            raise ValueError(f"{func} does not depend on x{i}")
    return Atom(_JET, func, len(dmi), dmi, args)


def symbol(name):
    return Atom(_SYMBOL, name, 0, (), ())


X1, X2, X3, X4 = (coord(i) for i in COORDS)
