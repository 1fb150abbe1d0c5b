"""Walker metric, its inverse, Levi-Civita connection and geodesic equations.

Coordinates are (x1, x2, x3, x4) and the metric is

    g = 2 (dx1 dx3 + dx2 dx4) + a dx3^2 + a dx4^2

for one defining function ``a``. All index tuples are 1-based.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exprparse import GENERAL, RESTRICTED, parse_normal
from .symcore import COORDS, ONE, ZERO, NormalForm, jet, substitute, symbol

IDX = COORDS
VELOCITIES = tuple(symbol(f"v{i}") for i in IDX)


class DegenerateMetric(ArithmeticError):
    pass


def generic_a():
    return NormalForm.atom(jet("a", IDX))


def defining_function(spec):
    """The function ``a`` for a parsed problem, with definitions substituted."""
    if spec.mode == GENERAL:
        if "a" in spec.definitions:
            return spec.definitions["a"].normal_form()
        return generic_a()
    if spec.mode != RESTRICTED:
        raise ValueError(f"unknown mode {spec.mode!r}")
    a = parse_normal("x1*b + x2*c + d")
    return substitute(a, spec.bindings())


@dataclass(frozen=True)
class MetricComponents:
    a: NormalForm
    g: dict
    ginv: dict


def walker_metric(a):
    a = NormalForm.lift(a)
    g = {(i, j): ZERO for i in IDX for j in IDX}
    for i, j in ((1, 3), (2, 4)):
        g[i, j] = g[j, i] = ONE
    g[3, 3] = g[4, 4] = a
    return g


def determinant(m, rows=IDX, cols=IDX):
    """Exact determinant by cofactor expansion along the first row."""
    if len(rows) == 1:
        return m[rows[0], cols[0]]
    total = ZERO
    r, rest = rows[0], rows[1:]
    for pos, c in enumerate(cols):
        entry = m[r, c]
        if entry.is_zero():
            continue
        minor = determinant(m, rest, cols[:pos] + cols[pos + 1:])
        term = entry * minor
        total = total + term if pos % 2 == 0 else total - term
    return total


def inverse(m):
    det = determinant(m)
    if det.is_zero():
        raise DegenerateMetric("metric determinant normalizes to zero")
    inv = {}
    for i in IDX:
        for j in IDX:
            rows = tuple(r for r in IDX if r != j)
            cols = tuple(c for c in IDX if c != i)
            cof = determinant(m, rows, cols)
            if (i + j) % 2:
                cof = -cof
            inv[i, j] = cof / det
    return inv


def matmul(p, q):
    return {
        (i, j): sum((p[i, k] * q[k, j] for k in IDX), ZERO) for i in IDX for j in IDX
    }


def metric(spec_or_a):
    """Metric and exact inverse; accepts a ProblemSpec or the function ``a``."""
    if hasattr(spec_or_a, "mode"):
        a = defining_function(spec_or_a)
    else:
        a = NormalForm.lift(spec_or_a)
    g = walker_metric(a)
    ginv = inverse(g)
    prod = matmul(g, ginv)
    for i in IDX:
        for j in IDX:
            if not (prod[i, j] - (ONE if i == j else ZERO)).is_zero():
                raise DegenerateMetric(f"inverse check failed at ({i},{j})")
    return MetricComponents(a, g, ginv)


class Connection:
    """Christoffel symbols Gamma^k_ij, symmetric in (i, j)."""

    def __init__(self, components):
        self._c = components

    def __getitem__(self, key):
        k, i, j = key
        return self._c[(k, i, j) if i <= j else (k, j, i)]

    def nonzero(self):
        return {key: v for key, v in sorted(self._c.items()) if not v.is_zero()}

    def items(self):
        return sorted(self._c.items())


def christoffel(m):
    """Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij), all 40 components."""
    g, ginv = m.g, m.ginv
    dg = {(l, i, j): g[i, j].diff(l) for l in IDX for i in IDX for j in IDX}
    lowered = {}
    for l in IDX:
        for i in IDX:
            for j in IDX:
                if i <= j:
                    lowered[l, i, j] = dg[i, j, l] + dg[j, i, l] - dg[l, i, j]
    out = {}
    half = Fraction(1, 2)
    for k in IDX:
        for i in IDX:
            for j in IDX:
                if i > j:
                    continue
                s = ZERO
                for l in IDX:
                    if not ginv[k, l].is_zero() and not lowered[l, i, j].is_zero():
                        s = s + ginv[k, l] * lowered[l, i, j]
                out[k, i, j] = s * half
    return Connection(out)


def geodesic_rhs_symbolic(conn):
    """Accelerations x''_k = -Gamma^k_ij v_i v_j in terms of x, v and jets."""
    v = {i: NormalForm.atom(VELOCITIES[i - 1]) for i in IDX}
    rhs = {}
    for k in IDX:
        s = ZERO
        for i in IDX:
            for j in IDX:
                c = conn[k, i, j]
                if not c.is_zero():
                    s = s - c * v[i] * v[j]
        rhs[k] = s
    return rhs


def energy_symbolic(a):
    """g(v, v) = 2 (v1 v3 + v2 v4) + a (v3^2 + v4^2)."""
    v = [NormalForm.atom(s) for s in VELOCITIES]
    return 2 * (v[0] * v[2] + v[1] * v[3]) + NormalForm.lift(a) * (v[2] ** 2 + v[3] ** 2)
