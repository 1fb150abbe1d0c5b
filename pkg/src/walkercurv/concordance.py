"""Cross-checks of the generic computations against the published closed forms.

Every check compares a table from ``reference`` with the same quantity
computed from the generic formulas. Checks flagged ``must`` are expected
to agree exactly; the others are adjudications whose outcome is reported.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import reference as ref
from .classify import (
    CLASSES,
    RESTRICTED,
    general_comparisons,
    inclusion_checks,
    killing_consistent,
    membership,
    restricted_comparisons,
    systems_for,
)
from .curvature import (
    RICCI_KEYS,
    char_poly,
    first_bianchi_residuals,
    is_linear_homogeneous,
    metric_trace,
    minimal_polynomial_system,
    ricci_level_system,
    nabla_ricci_abstract,
    quadratic_discriminant,
    scalar_operator_system,
    second_bianchi_residuals,
    symmetry_residuals,
)
from .exprparse import parse, parse_normal, render
from .pipeline import Analysis, general_analysis, restricted_analysis
from .symcore import EXPRESSION, ZERO, NormalForm, interreduce, linear_membership, symbol
from .walker import IDX, determinant, geodesic_rhs_symbolic


@dataclass
class Check:
    name: str
    must: bool
    passed: bool
    summary: str
    discrepancies: list = field(default_factory=list)

    def as_dict(self):
        return {
            "name": self.name,
            "must": self.must,
            "passed": self.passed,
            "summary": self.summary,
            "discrepancies": self.discrepancies,
        }


def _key(k):
    return ",".join(map(str, k))


def compare_table(name, computed, published, must=True, what="component"):
    """Compare a computed dict with a published one; missing published keys mean zero."""
    bad = []
    for k in sorted(set(computed) | set(published)):
        c = computed.get(k, ZERO)
        p = published.get(k, ZERO)
        diff = c - p
        if not diff.is_zero():
            bad.append(
                {
                    "index": _key(k),
                    "computed": render(c),
                    "published": render(p),
                    "difference": render(diff),
                }
            )
    nonzero = sum(1 for v in computed.values() if not v.is_zero())
    summary = f"{nonzero} nonzero {what}s computed, {len(published)} published, {len(bad)} differ"
    return Check(name, must, not bad, summary, bad)


def _rho_subs(rho):
    return {
        symbol("r13"): rho[1, 3],
        symbol("r14"): rho[1, 4],
        symbol("r24"): rho[2, 4],
        symbol("r33"): rho[3, 3],
        symbol("r34"): rho[3, 4],
        symbol("r44"): rho[4, 4],
    }


def random_cubic(rng):
    """Random polynomial a of degree <= 3 with small integer coefficients."""
    monos = [m for d in range(4) for m in combinations_with_replacement(IDX, d)]
    e = ZERO
    for m in monos:
        c = rng.randint(-3, 3)
        if c:
            t = NormalForm.const(c)
            for i in m:
                t = t * NormalForm.coord(i)
            e = e + t
    return e


def bianchi_check(count=10, seed=2024):
    rng = random.Random(seed)
    failures = []
    for n in range(count):
        a = random_cubic(rng)
        an = Analysis(a)
        R = an.riemann
        for label, res in (
            ("symmetry", symmetry_residuals(R)),
            ("first Bianchi", first_bianchi_residuals(R)),
            ("second Bianchi", second_bianchi_residuals(R, an.connection)),
        ):
            bad = [k for k, v in res.items() if not v.is_zero()]
            if bad:
                failures.append({"instance": n, "a": render(a), "identity": label, "count": len(bad)})
    return Check(
        "curvature identities on random cubic a",
        True,
        not failures,
        f"{count} random instances (seed {seed}); symmetry, first and second Bianchi",
        failures,
    )


def general_checks():
    an = general_analysis()
    m, conn, R, rd = an.metric, an.connection, an.riemann, an.ricci
    checks = []

    inv_ok = determinant(m.g) == NormalForm.const(1)
    checks.append(Check("metric determinant", True, inv_ok, f"det g = {render(determinant(m.g))}"))

    conn_table = {k: v for k, v in conn.items()}
    c = compare_table("Levi-Civita connection", conn_table, ref.table(ref.CONNECTION))
    nz = len(conn.nonzero())
    c.passed = c.passed and nz == 14
    checks.append(c)

    rhs = geodesic_rhs_symbolic(conn)
    checks.append(
        compare_table(
            "geodesic equations",
            rhs,
            ref.table(ref.GEODESIC, ref.VELOCITY_SYMBOLS),
            what="equation",
        )
    )

    reps = {r: R[r] for r in R.representatives()}
    checks.append(compare_table("(0,4)-curvature", reps, ref.table(ref.CURVATURE)))

    rho = {k: rd.rho[k] for k in RICCI_KEYS}
    checks.append(compare_table("Ricci tensor", rho, ref.table(ref.RICCI)))

    tau_diff = rd.tau - parse_normal(ref.SCALAR)
    checks.append(
        Check("scalar curvature", True, tau_diff.is_zero(), f"tau = {render(rd.tau)}")
    )

    F = {k: rd.F[k] for k in RICCI_KEYS}
    checks.append(compare_table("Einstein tensor", F, ref.table(ref.EINSTEIN_TENSOR)))

    trace = metric_trace(rd.F, m)
    checks.append(Check("trace of Einstein tensor", True, trace.is_zero(), f"g^ij F_ij = {render(trace)}"))

    subs = _rho_subs(rd.rho)
    q_pub = {k: v.subs(subs) for k, v in ref.table(ref.OPERATOR, ref.RHO_SYMBOLS).items()}
    checks.append(compare_table("Ricci operator", dict(rd.Q), q_pub))

    qrho = []
    for i in IDX:
        for j in IDX:
            lhs = sum((m.g[i, k] * rd.Q[k, j] for k in IDX), ZERO)
            if not (lhs - rd.rho[i, j]).is_zero():
                qrho.append(_key((i, j)))
    checks.append(Check("g(QX, Y) = rho(X, Y)", True, not qrho, "componentwise", qrho))

    cp = char_poly(rd)
    cp_pub = parse_normal(ref.CHAR_POLY, symbols=ref.RHO_SYMBOLS).subs(subs)
    diff = cp - cp_pub
    checks.append(
        Check(
            "characteristic polynomial",
            True,
            diff.is_zero(),
            "det(Q - lam I) against ((rho13 - lam)(rho24 - lam) - rho14^2)^2",
            [] if diff.is_zero() else [{"difference": render(diff)}],
        )
    )

    checks.append(_einstein_general())

    checks.append(bianchi_check())

    # -- adjudications ---------------------------------------------------
    nr = an.nabla_ricci
    checks.append(
        compare_table(
            "covariant derivative of Ricci",
            dict(nr.components),
            ref.table(ref.NABLA_RICCI),
            must=False,
        )
    )

    abstract = nabla_ricci_abstract(conn)
    names = {f"r{j}{k}" for j, k in RICCI_KEYS}
    lin = all(v.is_zero() or is_linear_homogeneous(v, names) for v in abstract.components.values())
    checks.append(Check("D rho linear-homogeneous in an abstract rho", True, lin, "40 components"))

    checks.append(_discriminant_check(rd))
    checks.append(_scalar_operator_check(rd))
    checks.append(_diagonalizable_check(rd, m))
    return checks


def _einstein_general():
    comp = general_comparisons()["E"]
    ok = comp.published_all_matched() and comp.derived_all_covered()
    details = [
        {"published": m.source, "match": m.kind, "detail": _fmt_detail(m.detail)}
        for m in comp.published
    ]
    return Check("Einstein system", True, ok, f"{len(comp.derived)} derived generators", [] if ok else details)


def _discriminant_check(rd):
    derived = quadratic_discriminant(rd)
    subs = _rho_subs(rd.rho)
    printed = parse_normal(ref.DISCRIMINANT_PRINTED, symbols=ref.RHO_SYMBOLS).subs(subs)
    expanded = parse_normal(ref.DISCRIMINANT_EXPANDED, symbols=ref.RHO_SYMBOLS).subs(subs)
    agrees_expanded = (derived - expanded).is_zero()
    agrees_printed = (derived - printed).is_zero()
    details = []
    if not agrees_printed:
        details.append(
            {
                "printed": ref.DISCRIMINANT_PRINTED,
                "derived": ref.DISCRIMINANT_EXPANDED if agrees_expanded else render(derived),
                "difference": render(derived - printed),
            }
        )
    return Check(
        "eigenvalue discriminant",
        False,
        agrees_printed,
        f"derived {render(derived)}; matches (rho13 - rho24)^2 + 4 rho14^2: {agrees_expanded}",
        details,
    )


def _scalar_operator_check(rd):
    derived = scalar_operator_system(rd)
    published = ref.system(ref.SCALAR_OPERATOR_SYSTEM)
    d_basis = interreduce(derived.generators)
    p_basis = interreduce(published)
    details = []
    ok = True
    for n, p in enumerate(published):
        fwd = linear_membership(p, d_basis, EXPRESSION)
        if fwd is None:
            ok = False
        details.append({"published": n + 1, "in derived ideal": fwd is not None})
    for n, g in enumerate(derived.generators):
        back = linear_membership(g, p_basis, EXPRESSION)
        if back is None:
            ok = False
        details.append({"derived": render(g), "in published ideal": back is not None})
    return Check(
        "Ricci operator a multiple of the identity",
        False,
        ok,
        f"{len(derived)} derived generators vs {len(published)} published, by polynomial division",
        [] if ok else details,
    )


def _diagonalizable_check(rd, m):
    subs = _rho_subs(rd.rho)
    transcribed = [g.subs(subs) for g in ref.system(ref.DIAGONALIZABLE_RICCI_LEVEL, ref.RHO_SYMBOLS)]
    derived = ricci_level_system(rd, m)
    published = ref.system(ref.DIAGONALIZABLE_SYSTEM)
    details = []
    ok = True
    # the transcribed rho-level pair and the one built from rho agree up to constants
    for n, t in enumerate(transcribed):
        if not any((t / g).is_constant() for g in derived.generators):
            ok = False
            details.append({"rho-level": n + 1, "issue": "transcription differs from derived"})
    for n, p in enumerate(published):
        found = None
        for k, lv in enumerate(transcribed):
            r = lv / p
            if r.is_constant():
                found = (k, r.constant_value())
                break
        if found is None:
            ok = False
        details.append(
            {
                "published": n + 1,
                "rho-level generator": None if found is None else found[0] + 1,
                "rho-level / published": None if found is None else str(found[1]),
            }
        )
    minpoly = minimal_polynomial_system(rd)
    covered = [linear_membership(g, transcribed, EXPRESSION) is not None for g in minpoly.generators]
    details.append({"p(Q) generators reducible by the rho-level pair": covered})
    return Check(
        "diagonalizability conditions",
        False,
        ok,
        "each published condition a constant multiple of a substituted rho-level condition",
        details,
    )


def _fmt_detail(detail):
    if detail is None:
        return None
    if isinstance(detail, str):
        return detail
    if isinstance(detail, tuple):
        name, factor = detail
        return f"{factor} * {name}"
    return " + ".join(f"{c} * {n}" for n, c in detail)


def comparison_dict(comp):
    return {
        "published": [
            {
                "generator": m.source,
                "match": m.kind,
                "detail": _fmt_detail(m.detail),
                "differentiated_in": None if m.derivative_of is None else f"x{m.derivative_of}",
            }
            for m in comp.published
        ],
        "derived": [
            {"generator": m.source, "match": m.kind, "detail": _fmt_detail(m.detail)}
            for m in comp.derived
        ],
    }


EXAMPLE_SPEC = "\n".join(f"func {k}(x3,x4) = {v}" for k, v in ref.EXAMPLE_EINSTEIN.items())


def restricted_checks():
    an = restricted_analysis()
    systems = systems_for(RESTRICTED)
    checks = []
    checks.append(
        Check("restricted family scalar curvature", True, an.ricci.tau.is_zero(), f"tau = {render(an.ricci.tau)}")
    )
    comps = restricted_comparisons(systems)
    e = comps["E"]
    checks.append(
        Check(
            "restricted Einstein system",
            True,
            e.published_all_matched() and e.derived_all_covered(),
            "derived against the three published conditions",
            [comparison_dict(e)],
        )
    )
    d_free = all(not a.name == "d" for g in _all_gens(systems) for a in g.atoms() if a.is_jet)
    checks.append(Check("restricted generators free of d", True, d_free, "atoms scanned in E, P, A, B, C"))

    for label in ("P-statement", "P-proof", "A", "B", "B-in-P"):
        comp = comps[label]
        ok = comp.published_all_matched() and comp.derived_all_covered()
        summary = (
            f"{sum(m.kind != 'unmatched' for m in comp.published)}/{len(comp.published)} published matched, "
            f"{sum(m.kind != 'unmatched' for m in comp.derived)}/{len(comp.derived)} derived covered"
        )
        checks.append(Check(f"class {label} vs published", False, ok, summary, [comparison_dict(comp)]))

    inc = inclusion_checks(systems)
    checks.append(
        Check(
            "inclusions E < P = A n B < A u B < C",
            True,
            inc.all_certified(),
            "; ".join(f"{r.claim}: {r.status}" for r in inc.results),
            [inclusion_dict(r) for r in inc.results],
        )
    )
    checks.append(
        Check("Killing cubic spans the cyclic system", True, killing_consistent(systems), "coefficients of (D_X rho)(X,X)")
    )

    spec = parse(EXAMPLE_SPEC)
    verdicts = {t: membership(spec, t, systems) for t in CLASSES}
    ok = all(v.holds for v in verdicts.values())
    locus = next((v.singular_locus for v in verdicts.values() if v.singular_locus is not None), None)
    checks.append(
        Check(
            "Einstein example membership",
            True,
            ok,
            ", ".join(f"{t}: {v.status}" for t, v in verdicts.items())
            + (f"; singular locus {render(NormalForm(locus))} = 0" if locus is not None else ""),
        )
    )
    return checks


def _all_gens(systems):
    for t in CLASSES:
        yield from systems[t].generators


def inclusion_dict(r):
    details = []
    for origin, value in r.details:
        if isinstance(value, bool):
            details.append({"check": origin, "holds": value})
        elif isinstance(value, NormalForm):
            details.append({"generator": origin, "value": render(value)})
        elif value is None:
            details.append({"generator": origin, "combination": None})
        else:
            details.append({"generator": origin, "combination": _fmt_detail(value)})
    return {"claim": r.claim, "status": r.status, "details": details}


def run_all():
    return general_checks() + restricted_checks()
