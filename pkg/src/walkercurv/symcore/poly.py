"""Sparse multivariate polynomials over Q.

A monomial is a tuple of ``(Atom, exponent)`` pairs sorted by atom; the
empty tuple is the unit monomial. Coefficients are ``Fraction``.
"""

import random
from fractions import Fraction
from functools import cmp_to_key

ONE_MONO = ()


def mono_mul(m, n):
    if not m:
        return n
    if not n:
        return m
    out = dict(m)
    for a, e in n:
        out[a] = out.get(a, 0) + e
    return tuple(sorted(out.items()))


def mono_div(m, n):
    """m / n, or None when n does not divide m."""
    if not n:
        return m
    out = dict(m)
    for a, e in n:
        have = out.get(a, 0)
        if have < e:
            return None
        if have == e:
            del out[a]
        else:
            out[a] = have - e
    return tuple(sorted(out.items()))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_cmp(m, n):
    """Graded lexicographic comparison; earlier atoms are more significant."""
    dm, dn = mono_degree(m), mono_degree(n)
    if dm != dn:
        return -1 if dm < dn else 1
    for (am, em), (an, en) in zip(m, n):
        if am != an:
            return 1 if am < an else -1
        if em != en:
            return -1 if em < en else 1
    if len(m) != len(n):
        return 1 if len(m) > len(n) else -1
    return 0


mono_key = cmp_to_key(mono_cmp)


class Poly:
    """Immutable polynomial; ``terms`` maps monomial -> nonzero Fraction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}
        self._hash = None

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls({ONE_MONO: c} if c else {})

    @classmethod
    def from_atom(cls, atom, exp=1):
        return cls({((atom, exp),): Fraction(1)})

    @classmethod
    def monomial(cls, mono, coeff=1):
        coeff = Fraction(coeff)
        return cls({mono: coeff} if coeff else {})

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(ONE_MONO) == 1

    def constant_value(self):
        return self.terms.get(ONE_MONO, Fraction(0))

    def atoms(self):
        out = set()
        for m in self.terms:
            for a, _ in m:
                out.add(a)
        return out

    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, atom):
        best = 0
        for m in self.terms:
            for a, e in m:
                if a == atom and e > best:
                    best = e
        return best

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return Poly()
        if len(other.terms) == 1 and ONE_MONO in other.terms:
            return self.scale(other.terms[ONE_MONO])
        if len(self.terms) == 1 and ONE_MONO in self.terms:
            return other.scale(self.terms[ONE_MONO])
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, mono, coeff=1):
        coeff = Fraction(coeff)
        return Poly({mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    # -- ordering ----------------------------------------------------------

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def leading_term(self):
        best = None
        for m in self.terms:
            if best is None or mono_cmp(m, best) > 0:
                best = m
        return best, self.terms[best]

    def leading_coeff(self):
        return self.leading_term()[1]

    def monic(self):
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coeff())

    def primitive(self):
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self, Fraction(1)
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, (c * den).numerator)
        factor = Fraction(den, g)
        if self.leading_coeff() < 0:
            factor = -factor
        return self.scale(factor), factor

    # -- calculus ------------------------------------------------------------

    def diff(self, i):
        """Partial derivative with respect to coordinate ``i``."""
        out = {}
        for m, c in self.terms.items():
            for pos, (a, e) in enumerate(m):
                if a.is_coord:
                    if a.index != i:
                        continue
                    new = None
                elif a.is_jet:
                    new = a.prolong(i)
                    if new is None:
                        continue
                else:
                    continue
                rest = dict(m)
                if e == 1:
                    del rest[a]
                else:
                    rest[a] = e - 1
                if new is not None:
                    rest[new] = rest.get(new, 0) + 1
                mm = tuple(sorted(rest.items()))
                s = out.get(mm, 0) + c * e
                if s:
                    out[mm] = s
                else:
                    out.pop(mm, None)
        return Poly(out)

    def as_univariate(self, atom):
        """Coefficients in ``atom``: dict exponent -> Poly free of ``atom``."""
        out = {}
        for m, c in self.terms.items():
            k = 0
            rest = m
            for pos, (a, e) in enumerate(m):
                if a == atom:
                    k = e
                    rest = m[:pos] + m[pos + 1:]
                    break
            out.setdefault(k, {})[rest] = c
        return {k: Poly(t) for k, t in out.items()}

    def evaluate(self, values, one, power=None):
        """Evaluate with ``values[atom]`` in any ring whose unit is ``one``.

        Atoms missing from ``values`` are an error in the caller's domain;
        ``power`` lets the caller cache repeated powers.
        """
        total = None
        cache = {}
        for m, c in self.terms.items():
            term = one * c
            for a, e in m:
                key = (a, e)
                p = cache.get(key)
                if p is None:
                    p = power(values[a], e) if power else values[a] ** e
                    cache[key] = p
                term = term * p
            total = term if total is None else total + term
        return total if total is not None else one * 0

    # -- dunder ------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_coeff_term(c, mono, first):
    body = "*".join(str(a) if e == 1 else f"{a}^{e}" for a, e in mono)
    sign = "-" if c < 0 else "+"
    mag = -c if c < 0 else c
    if body:
        text = body if mag == 1 else f"{mag}*{body}"
    else:
        text = str(mag)
    if first:
        return text if sign == "+" else "-" + text
    return f" {sign} {text}"


def format_poly(p):
    if not p.terms:
        return "0"
    return "".join(
        format_coeff_term(c, m, i == 0) for i, (m, c) in enumerate(p.sorted_terms())
    )


# -- division and gcd --------------------------------------------------------


def divide(f, divisors):
    """Multivariate division; returns (quotients, remainder)."""
    quotients = [dict() for _ in divisors]
    leads = [g.leading_term() for g in divisors]
    rem = {}
    p = dict(f.terms)
    while p:
        m = max(p, key=mono_key)
        c = p[m]
        for k, (lm, lc) in enumerate(leads):
            q = mono_div(m, lm)
            if q is None:
                continue
            qc = c / lc
            quotients[k][q] = quotients[k].get(q, 0) + qc
            for gm, gc in divisors[k].terms.items():
                mm = mono_mul(gm, q)
                s = p.get(mm, 0) - qc * gc
                if s:
                    p[mm] = s
                else:
                    p.pop(mm, None)
            break
        else:
            rem[m] = c
            del p[m]
    return [Poly({m: c for m, c in q.items() if c}) for q in quotients], Poly(rem)


def exact_div(f, g):
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if g.is_constant():
        return f.scale(1 / g.constant_value())
    (q,), r = divide(f, [g])
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def _monomial_content(f):
    """Largest monomial dividing every term of ``f``."""
    it = iter(f.terms)
    common = dict(next(it))
    for m in it:
        md = dict(m)
        for a in list(common):
            e = md.get(a, 0)
            if e == 0:
                del common[a]
            elif e < common[a]:
                common[a] = e
        if not common:
            break
    return tuple(sorted(common.items()))


def _mono_gcd(m, n):
    nd = dict(n)
    return tuple(sorted((a, min(e, nd[a])) for a, e in m if a in nd))


def gcd(f, g):
    """Monic greatest common divisor over Q (primitive PRS, recursive)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Poly.const(1)
    mf, mg = _monomial_content(f), _monomial_content(g)
    mono = _mono_gcd(mf, mg)
    if mf:
        f = Poly({mono_div(m, mf): c for m, c in f.terms.items()})
    if mg:
        g = Poly({mono_div(m, mg): c for m, c in g.terms.items()})
    core = _gcd_nomono(f, g)
    return core.mul_monomial(mono).monic()


def _gcd_nomono(f, g):
    if f.is_constant() or g.is_constant():
        return Poly.const(1)
    if len(f.terms) == 1 or len(g.terms) == 1:
        # monomial content already removed, so a lone term is a constant
        return Poly.const(1)
    if f == g:
        return f.monic()
    fa, ga = f.atoms(), g.atoms()
    common = fa & ga
    if not common:
        return Poly.const(1)
    # a variable in only one input cannot occur in the gcd
    for x in sorted(fa ^ ga):
        return _gcd_over_coefficients(f, g, x)
    for small, big in ((f, g), (g, f)):
        if len(small.terms) <= len(big.terms):
            q = _try_exact_div(big, small)
            if q is not None:
                return small.monic()
    for x in sorted(common):
        if _gcd_free_of(f, g, x):
            return _gcd_over_coefficients(f, g, x)
    x = min(common, key=lambda a: (max(f.degree_in(a), g.degree_in(a)), a))
    fu, gu = f.as_univariate(x), g.as_univariate(x)
    cf = _content(fu.values())
    cg = _content(gu.values())
    c = gcd(cf, cg)
    ppf = _univ_scale_div(fu, cf)
    ppg = _univ_scale_div(gu, cg)
    h = _univ_prs_gcd(ppf, ppg, x)
    return (c * h).monic()


def _try_exact_div(f, g):
    (q,), r = divide(f, [g])
    return q if r.is_zero() else None


def _gcd_over_coefficients(f, g, x):
    """gcd(f, g) when the gcd is known not to involve ``x``."""
    parts = sorted(
        list(f.as_univariate(x).values()) + list(g.as_univariate(x).values()),
        key=lambda p: len(p.terms),
    )
    result = parts[0].monic()
    for p in parts[1:]:
        if result.is_constant():
            return Poly.const(1)
        result = gcd(result, p)
    return result


_EVAL_RNG = random.Random(20240601)


def _eval_except(f, x, point):
    """Univariate image of ``f`` in ``x`` with every other atom replaced by ``point``."""
    out = {}
    for mono, c in f.terms.items():
        k = 0
        v = c
        for a, e in mono:
            if a == x:
                k = e
            else:
                v *= point[a] ** e
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _fraction_univ_gcd_degree(u, v):
    def rem(a, b):
        a = dict(a)
        db = max(b)
        lb = b[db]
        while a and max(a) >= db:
            da = max(a)
            q = a[da] / lb
            for k, c in b.items():
                kk = k + da - db
                s = a.get(kk, 0) - q * c
                if s:
                    a[kk] = s
                else:
                    a.pop(kk, None)
        return a

    while v:
        u, v = v, rem(u, v)
    return max(u) if u else -1


def _gcd_free_of(f, g, x, tries=3):
    """True when gcd(f, g) provably has degree 0 in ``x``.

    With the other atoms fixed at integers where the leading coefficient of
    ``f`` in ``x`` survives, the image of the true gcd keeps its degree and
    divides both images. A constant gcd of the images therefore proves the
    claim; any other outcome is inconclusive and returns False.
    """
    others = sorted((f.atoms() | g.atoms()) - {x})
    df = f.degree_in(x)
    for _ in range(tries):
        point = {a: Fraction(_EVAL_RNG.randint(-97, 97) or 1) for a in others}
        fu = _eval_except(f, x, point)
        if max(fu, default=-1) != df:
            continue
        gu = _eval_except(g, x, point)
        if not gu:
            continue
        return _fraction_univ_gcd_degree(fu, gu) == 0
    return False


def _content(coeffs):
    result = None
    for p in coeffs:
        result = p.monic() if result is None else gcd(result, p)
        if result.is_constant():
            return Poly.const(1)
    return result


def _univ_scale_div(u, c):
    if c.is_one():
        return dict(u)
    return {k: exact_div(p, c) for k, p in u.items()}


def _univ_deg(u):
    return max(u) if u else -1


def _univ_prem(a, b):
    db = _univ_deg(b)
    lcb = b[db]
    r = dict(a)
    while r and _univ_deg(r) >= db:
        dr = _univ_deg(r)
        lcr = r[dr]
        shift = dr - db
        new = {k: p * lcb for k, p in r.items()}
        for k, p in b.items():
            kk = k + shift
            v = new.get(kk, Poly()) - lcr * p
            if v.is_zero():
                new.pop(kk, None)
            else:
                new[kk] = v
        r = new
    return r


def _univ_primitive(u):
    c = _content(u.values())
    return _univ_scale_div(u, c)


def _univ_prs_gcd(a, b, x):
    if _univ_deg(a) < _univ_deg(b):
        a, b = b, a
    while b:
        if _univ_deg(b) == 0:
            return Poly.const(1)
        r = _univ_prem(a, b)
        a, b = b, (_univ_primitive(r) if r else {})
    out = Poly()
    xp = Poly.from_atom(x)
    for k, p in a.items():
        out = out + p * (xp ** k)
    return out
