"""Curvature, Ricci data and the covariant derivative of the Ricci tensor.

Conventions (chosen so the closed forms reproduce exactly):

* R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
* R_ijkl = g(R(d_i, d_j) d_k, d_l)
* rho_jk = sum_{i,l} g^il R_ijkl, i.e. rho(Y, Z) = trace(X -> R(X, Y) Z)
* Q^i_j = g^ik rho_kj, so g(Q X, Y) = rho(X, Y)
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .symcore import ZERO, NormalForm, jet, symbol
from .systems import PDESystem
from .walker import IDX, determinant

LAMBDA = symbol("lam")
RICCI_KEYS = tuple((j, k) for j in IDX for k in IDX if j <= k)


def _sym(i, j):
    return (i, j) if i <= j else (j, i)


class RiemannComponents:
    """Full (0,4) tensor; ``representatives`` lists the canonical index tuples."""

    def __init__(self, full):
        self.full = full

    def __getitem__(self, key):
        return self.full[key]

    @staticmethod
    def canonical(key):
        """Representative of ``key`` under the pair symmetries, with the sign."""
        i, j, k, l = key
        sign = 1
        if i > j:
            i, j, sign = j, i, -sign
        if k > l:
            k, l, sign = l, k, -sign
        if (i, j) > (k, l):
            i, j, k, l = k, l, i, j
        return (i, j, k, l), sign

    def representatives(self):
        reps = sorted({self.canonical(key)[0] for key in self.full})
        return [r for r in reps if r[0] != r[1] and r[2] != r[3]]

    def nonzero(self):
        return {r: self.full[r] for r in self.representatives() if not self.full[r].is_zero()}


def riemann(m, conn):
    g = m.g
    dconn = {}

    def dgamma(i, mm, j, k):
        key = (i, mm) + _sym(j, k)
        v = dconn.get(key)
        if v is None:
            v = conn[mm, j, k].diff(i)
            dconn[key] = v
        return v

    up = {}
    for i in IDX:
        for j in IDX:
            if i >= j:
                continue
            for k in IDX:
                for mm in IDX:
                    s = dgamma(i, mm, j, k) - dgamma(j, mm, i, k)
                    for l in IDX:
                        a1, b1 = conn[mm, i, l], conn[l, j, k]
                        if not a1.is_zero() and not b1.is_zero():
                            s = s + a1 * b1
                        a2, b2 = conn[mm, j, l], conn[l, i, k]
                        if not a2.is_zero() and not b2.is_zero():
                            s = s - a2 * b2
                    up[mm, k, i, j] = s
    full = {}
    for i, j, k, l in product(IDX, repeat=4):
        if i == j:
            full[i, j, k, l] = ZERO
            continue
        if i > j:
            continue
        s = ZERO
        for mm in IDX:
            if not g[mm, l].is_zero() and not up[mm, k, i, j].is_zero():
                s = s + up[mm, k, i, j] * g[mm, l]
        full[i, j, k, l] = s
        full[j, i, k, l] = -s
    return RiemannComponents(full)


@dataclass
class RicciData:
    rho: dict
    tau: NormalForm
    F: dict
    Q: dict


def ricci(R, m):
    ginv = m.ginv
    rho = {}
    for j, k in RICCI_KEYS:
        s = ZERO
        for i in IDX:
            for l in IDX:
                if not ginv[i, l].is_zero():
                    s = s + ginv[i, l] * R[i, j, k, l]
        rho[j, k] = s
    for j, k in RICCI_KEYS:
        rho[k, j] = rho[j, k]
    Q = {
        (i, j): sum((ginv[i, k] * rho[k, j] for k in IDX if not ginv[i, k].is_zero()), ZERO)
        for i in IDX
        for j in IDX
    }
    tau = sum((Q[i, i] for i in IDX), ZERO)
    quarter = tau * Fraction(1, 4)
    F = {key: rho[key] - quarter * m.g[key] for key in rho}
    return RicciData(rho, tau, F, Q)


def einstein_system(rd, context="general"):
    """Vanishing of the trace-free Ricci tensor."""
    return PDESystem.build("E", context, ((f"F{j}{k}", rd.F[j, k]) for j, k in RICCI_KEYS))


def char_poly(rd):
    """det(Q - lam I) as a NormalForm in the symbol ``lam``."""
    lam = NormalForm.atom(LAMBDA)
    shifted = {(i, j): rd.Q[i, j] - (lam if i == j else ZERO) for i in IDX for j in IDX}
    return determinant(shifted)


def poly_coefficients(e, atom):
    """Coefficients of a polynomial NormalForm in ``atom`` (dict power -> NormalForm)."""
    e = NormalForm.lift(e)
    if not e.is_polynomial():
        raise ValueError("expected a polynomial")
    return {k: NormalForm(p) for k, p in e.num.as_univariate(atom).items()}


def quadratic_discriminant(rd):
    """Discriminant of lam^2 - (rho13 + rho24) lam + rho13 rho24 - rho14^2."""
    r13, r24, r14 = rd.rho[1, 3], rd.rho[2, 4], rd.rho[1, 4]
    return (r13 + r24) ** 2 - 4 * (r13 * r24 - r14 ** 2)


def scalar_operator_system(rd, context="general"):
    """Q equal to rho13 times the identity."""
    lam = rd.Q[1, 1]
    named = []
    for i in IDX:
        for j in IDX:
            entry = rd.Q[i, j] - (lam if i == j else ZERO)
            named.append((f"Q{i}{j}", entry))
    return PDESystem.build("Q=lam*I", context, named)


def ricci_level_system(rd, m, context="general"):
    """The two rho-level conditions for a diagonalizable operator with a double eigenvalue pair.

    Written with a = g_33 and the Ricci components left as computed.
    """
    r = rd.rho
    a = m.g[3, 3]
    first = (
        2 * r[1, 4] * r[3, 4]
        - 2 * a * r[1, 4] ** 2
        - r[1, 3] * r[4, 4]
        + 2 * a * r[1, 3] * r[2, 4]
        - r[2, 4] * r[3, 3]
    )
    second = r[4, 4] - a * r[2, 4] + r[3, 3] - a * r[1, 3]
    return PDESystem.build("diag", context, [("diag1", first), ("diag2", second)])


def diagonalizability_systems(rd, m, context="general"):
    """(Q proportional to the identity, rho-level diagonalizability pair)."""
    return scalar_operator_system(rd, context), ricci_level_system(rd, m, context)


def minimal_polynomial_system(rd, context="general"):
    """Entries of p(Q), p(lam) = lam^2 - (rho13 + rho24) lam + rho13 rho24 - rho14^2.

    With two distinct eigenvalues Q is diagonalizable exactly when p(Q) = 0.
    """
    r13, r24, r14 = rd.rho[1, 3], rd.rho[2, 4], rd.rho[1, 4]
    trace, det = r13 + r24, r13 * r24 - r14 ** 2
    Q = rd.Q
    named = []
    for i in IDX:
        for j in IDX:
            sq = sum((Q[i, k] * Q[k, j] for k in IDX), ZERO)
            entry = sq - trace * Q[i, j] + (det if i == j else ZERO)
            named.append((f"p(Q){i}{j}", entry))
    return PDESystem.build("p(Q)=0", context, named)


@dataclass
class NablaRicci:
    """(nabla_i rho)_jk keyed (i, j, k) with j <= k."""

    components: dict

    def __getitem__(self, key):
        i, j, k = key
        return self.components[(i,) + _sym(j, k)]

    def nonzero(self):
        return {k: v for k, v in sorted(self.components.items()) if not v.is_zero()}


def nabla_ricci(rho, conn):
    """(nabla_i rho)_jk = d_i rho_jk - rho(nabla_i d_j, d_k) - rho(d_j, nabla_i d_k)."""
    out = {}
    for i in IDX:
        for j, k in RICCI_KEYS:
            s = rho[j, k].diff(i)
            for l in IDX:
                c1 = conn[l, i, j]
                if not c1.is_zero() and not rho[l, k].is_zero():
                    s = s - c1 * rho[l, k]
                c2 = conn[l, i, k]
                if not c2.is_zero() and not rho[j, l].is_zero():
                    s = s - c2 * rho[j, l]
            out[i, j, k] = s
    return NablaRicci(out)


def abstract_ricci():
    """Opaque symmetric tensor: rho_jk is the function ``r{j}{k}`` of all coordinates."""
    rho = {}
    for j, k in RICCI_KEYS:
        rho[j, k] = rho[k, j] = NormalForm.atom(jet(f"r{j}{k}", IDX))
    return rho


def nabla_ricci_abstract(conn):
    return nabla_ricci(abstract_ricci(), conn)


def is_linear_homogeneous(e, names):
    """Every term of ``e`` has total degree exactly one in jets of ``names``."""
    e = NormalForm.lift(e)
    if not e.is_polynomial():
        return False
    for mono in e.num.terms:
        deg = sum(exp for atom, exp in mono if atom.is_jet and atom.name in names)
        if deg != 1:
            return False
    return True


def nabla_riemann(R, conn):
    """(nabla_m R)_ijkl, computed for i < j and k < l only."""
    out = {}
    pairs = [(i, j) for i in IDX for j in IDX if i < j]
    for mm in IDX:
        for (i, j) in pairs:
            for (k, l) in pairs:
                s = R[i, j, k, l].diff(mm)
                for p in IDX:
                    for pos, idx in enumerate((i, j, k, l)):
                        c = conn[p, mm, idx]
                        if c.is_zero():
                            continue
                        key = [i, j, k, l]
                        key[pos] = p
                        r = R[tuple(key)]
                        if not r.is_zero():
                            s = s - c * r
                out[mm, i, j, k, l] = s
    return out


def _nr(nR, mm, i, j, k, l):
    if i == j:
        return ZERO
    if i > j:
        return -nR[mm, j, i, k, l]
    return nR[mm, i, j, k, l]


def second_bianchi_residuals(R, conn):
    """(nabla_m R)_ijkl + (nabla_i R)_jmkl + (nabla_j R)_mikl for all indices."""
    nR = nabla_riemann(R, conn)
    out = {}
    pairs = [(i, j) for i in IDX for j in IDX if i < j]
    for mm in IDX:
        for (i, j) in pairs:
            for (k, l) in pairs:
                out[mm, i, j, k, l] = (
                    _nr(nR, mm, i, j, k, l) + _nr(nR, i, j, mm, k, l) + _nr(nR, j, mm, i, k, l)
                )
    return out


def first_bianchi_residuals(R):
    return {
        (i, j, k, l): R[i, j, k, l] + R[i, k, l, j] + R[i, l, j, k]
        for i, j, k, l in product(IDX, repeat=4)
    }


def symmetry_residuals(R):
    out = {}
    for key in product(IDX, repeat=4):
        i, j, k, l = key
        out[("antisym-12",) + key] = R[i, j, k, l] + R[j, i, k, l]
        out[("antisym-34",) + key] = R[i, j, k, l] + R[i, j, l, k]
        out[("pair",) + key] = R[i, j, k, l] - R[k, l, i, j]
    return out


def metric_trace(t, m):
    """g^ij t_ij."""
    return sum(
        (m.ginv[i, j] * t[j, i] for i in IDX for j in IDX if not m.ginv[i, j].is_zero()),
        ZERO,
    )
