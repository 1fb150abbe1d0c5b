"""Linear membership of a target polynomial in the span of a basis."""

from fractions import Fraction

from .expr import normalize
from .poly import divide
from .rational import NormalForm


class ModeViolation(ValueError):
    """Rational-constant mode received a non-polynomial input."""


RATIONAL = "rational-constant"
EXPRESSION = "expression"


def solve_exact(rows, rhs):
    """Solve ``rows @ c = rhs`` over Q; None when inconsistent.

    ``rows`` is a list of equal-length lists of Fractions. Free variables
    are set to zero, so the returned solution is one particular solution.
    """
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(aug)) if aug[k][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][col]
        aug[r] = [v / p for v in aug[r]]
        for k in range(len(aug)):
            if k != r and aug[k][col]:
                f = aug[k][col]
                aug[k] = [a - f * b for a, b in zip(aug[k], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for k in range(r, len(aug)):
        if aug[k][n]:
            return None
    sol = [Fraction(0)] * n
    for k, col in enumerate(pivots):
        sol[col] = aug[k][n]
    return sol


def linear_membership(target, basis, coefficient_mode=RATIONAL):
    """Coefficients expressing ``target`` through ``basis``, or None.

    In rational-constant mode the answer is exact and complete: the
    coefficient vectors of all monomials form a linear system over Q. In
    expression mode the multipliers come from one pass of multivariate
    division, which is sound but can miss combinations.
    """
    target = normalize(target)
    basis = [normalize(b) for b in basis]
    if coefficient_mode == RATIONAL:
        for p in [target, *basis]:
            if not p.is_polynomial():
                raise ModeViolation("rational-constant mode needs polynomial inputs")
        if target.is_zero():
            return [Fraction(0)] * len(basis)
        monos = set(target.num.terms)
        for b in basis:
            monos.update(b.num.terms)
        monos = sorted(monos, key=lambda m: repr(m))
        rows = [[b.num.terms.get(m, Fraction(0)) for b in basis] for m in monos]
        rhs = [target.num.terms.get(m, Fraction(0)) for m in monos]
        return solve_exact(rows, rhs)
    if coefficient_mode != EXPRESSION:
        raise ValueError(f"unknown coefficient mode {coefficient_mode!r}")
    if target.is_zero():
        return [NormalForm.const(0)] * len(basis)
    # divide numerators, then rescale multipliers by the denominators
    nonzero = [k for k, b in enumerate(basis) if not b.is_zero()]
    if not nonzero:
        return None
    quotients, rem = divide(target.num, [basis[k].num for k in nonzero])
    if not rem.is_zero():
        return None
    out = [NormalForm.const(0)] * len(basis)
    for k, q in zip(nonzero, quotients):
        out[k] = NormalForm(q) * NormalForm(basis[k].den) / NormalForm(target.den)
    return out


def interreduce(polys):
    """Reduce each numerator by all the others until nothing changes.

    The result generates the same ideal. It is not a Groebner basis, but it
    makes one-pass division usable when generators share non-leading terms.
    """
    gens = [normalize(p).num.primitive()[0] for p in polys]
    gens = [g for g in gens if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for k in range(len(gens)):
            others = gens[:k] + gens[k + 1:]
            if not others:
                break
            _, rem = divide(gens[k], others)
            rem = rem.primitive()[0] if not rem.is_zero() else rem
            if rem != gens[k]:
                gens[k] = rem
                changed = True
        gens = [g for g in gens if not g.is_zero()]
    return [NormalForm(g) for g in gens]


def combine(coeffs, basis):
    total = NormalForm.const(0)
    for c, b in zip(coeffs, basis):
        total = total + normalize(b) * c
    return total
