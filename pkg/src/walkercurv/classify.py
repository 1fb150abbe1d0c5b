"""Einstein-like classes E, P, A, B, C as PDE systems, and checks on them.

* E: Einstein, trace-free Ricci tensor vanishes
* P: parallel Ricci tensor
* A: cyclic-parallel Ricci tensor (Ricci is a Killing tensor)
* B: Ricci tensor is a Codazzi tensor
* C: constant scalar curvature
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import reference as ref
from .curvature import abstract_ricci, einstein_system, is_linear_homogeneous, nabla_ricci
from .exprparse import GENERAL, RESTRICTED
from .pipeline import Analysis, general_analysis, restricted_analysis
from .symcore import (
    ZERO,
    NormalForm,
    linear_membership,
    substitute,
    symbol,
)
from .symcore.linear import RATIONAL
from .symcore.poly import Poly, exact_div, gcd
from .systems import PDESystem, canonical_generator
from .walker import IDX

CLASSES = ("E", "P", "A", "B", "C")


class InclusionUndecided(AssertionError):
    """No rational-constant combination certifies a claimed inclusion."""


# -- derivations ---------------------------------------------------------------


def parallel_system(nr, context=GENERAL):
    named = [(f"(D{i}rho){j}{k}", v) for (i, j, k), v in sorted(nr.components.items())]
    return PDESystem.build("P", context, named)


def cyclic_system(nr, context=GENERAL):
    """Full polarization: (D_i rho)_jk + (D_j rho)_ik + (D_k rho)_ji over i <= j <= k."""
    named = []
    for i, j, k in combinations_with_replacement(IDX, 3):
        named.append((f"cyc{i}{j}{k}", nr[i, j, k] + nr[j, i, k] + nr[k, j, i]))
    return PDESystem.build("A", context, named)


def codazzi_system(nr, context=GENERAL):
    named = []
    for i in IDX:
        for j in IDX:
            if i < j:
                for k in IDX:
                    named.append((f"(D{i}rho){j}{k}-(D{j}rho){i}{k}", nr[i, j, k] - nr[j, i, k]))
    return PDESystem.build("B", context, named)


def constant_scalar_system(rd, context=GENERAL):
    return PDESystem.build("C", context, ((f"d{i}tau", rd.tau.diff(i)) for i in IDX))


def killing_form(nr):
    """(D_X rho)(X, X) for a symbolic vector X = (w1, w2, w3, w4)."""
    w = {i: NormalForm.atom(symbol(f"w{i}")) for i in IDX}
    total = ZERO
    for i in IDX:
        for j in IDX:
            for k in IDX:
                c = nr[i, j, k]
                if not c.is_zero():
                    total = total + c * w[i] * w[j] * w[k]
    return total


def killing_coefficients(nr):
    """Coefficients of the Killing cubic, one per monomial in w."""
    form = killing_form(nr)
    ws = {symbol(f"w{i}") for i in IDX}
    coeffs = {}
    for mono, c in form.num.terms.items():
        wpart = tuple((a, e) for a, e in mono if a in ws)
        rest = tuple((a, e) for a, e in mono if a not in ws)
        coeffs.setdefault(wpart, Poly())
        coeffs[wpart] = coeffs[wpart] + Poly.monomial(rest, c)
    return [NormalForm(p) for _, p in sorted(coeffs.items(), key=lambda t: repr(t[0]))]


@dataclass
class ClassSystems:
    context: str
    analysis: Analysis
    systems: dict

    def __getitem__(self, tag):
        return self.systems[tag]


def derive_systems(analysis, context):
    nr = analysis.nabla_ricci
    rd = analysis.ricci
    return ClassSystems(
        context,
        analysis,
        {
            "E": einstein_system(rd, context),
            "P": parallel_system(nr, context),
            "A": cyclic_system(nr, context),
            "B": codazzi_system(nr, context),
            "C": constant_scalar_system(rd, context),
        },
    )


_CACHE = {}


def systems_for(context):
    """Derived systems for the arbitrary function of the given context (cached)."""
    if context not in _CACHE:
        analysis = general_analysis() if context == GENERAL else restricted_analysis()
        _CACHE[context] = derive_systems(analysis, context)
    return _CACHE[context]


# -- membership ------------------------------------------------------------------------

HOLDS = "holds"
HOLDS_OFF_SINGULAR = "holds off singular set"
FAILS = "fails"
CONDITIONAL = "conditional"


@dataclass
class Verdict:
    tag: str
    status: str
    residuals: list = field(default_factory=list)
    singular_locus: object = None

    @property
    def holds(self):
        return self.status in (HOLDS, HOLDS_OFF_SINGULAR)


def squarefree(p):
    """Squarefree part of a polynomial: p / gcd(p, d1 p, ..., d4 p)."""
    g = p
    for i in IDX:
        g = gcd(g, p.diff(i))
    return exact_div(p, g).monic() if not g.is_constant() else p.monic()


def singular_locus(bindings):
    """Monic squarefree polynomial whose zero set holds every pole of the definitions."""
    den = Poly.const(1)
    for value in bindings.values():
        value = NormalForm.lift(value)
        if not value.den.is_one():
            den = den * value.den
    if den.is_constant():
        return None
    return squarefree(den)


def membership(spec, tag, systems=None):
    """Substitute the problem's definitions into the class generators."""
    if tag not in CLASSES:
        raise ValueError(f"unknown class {tag!r}")
    context = spec.mode
    systems = systems or systems_for(context)
    bindings = spec.bindings()
    locus = singular_locus(bindings)
    residuals = []
    for gen in systems[tag]:
        value = substitute(gen, bindings)
        if not value.is_zero():
            residuals.append(value)
    if not residuals:
        status = HOLDS if locus is None else HOLDS_OFF_SINGULAR
    elif any(not any(a.is_jet for a in r.atoms()) for r in residuals):
        status = FAILS
    else:
        status = CONDITIONAL
    return Verdict(tag, status, residuals, locus)


# -- inclusions ----------------------------------------------------------------------


@dataclass
class InclusionResult:
    claim: str
    status: str  # "certified" or "undecided"
    details: list = field(default_factory=list)


@dataclass
class InclusionReport:
    results: list

    def all_certified(self):
        return all(r.status == "certified" for r in self.results)

    def raise_for_undecided(self):
        for r in self.results:
            if r.status != "certified":
                raise InclusionUndecided(r.claim)


def _span_check(claim, targets, basis, basis_names):
    details = []
    ok = True
    for origin, t in targets:
        coeffs = linear_membership(t, basis, RATIONAL)
        if coeffs is None:
            ok = False
            details.append((origin, None))
        else:
            details.append(
                (origin, [(n, c) for n, c in zip(basis_names, coeffs) if c])
            )
    return InclusionResult(claim, "certified" if ok else "undecided", details)


def _named(system):
    return [(f"{system.label}{n + 1}", g) for n, g in enumerate(system.generators)]


def inclusion_checks(systems):
    """Certify E < P = A n B < A u B < C for the systems of one context."""
    P, A, B, C, E = (systems[t] for t in "PABCE")
    results = []
    pnames = [n for n, _ in _named(P)]
    results.append(_span_check("A <= P-span (P implies A)", _named(A), P.generators, pnames))
    results.append(_span_check("B <= P-span (P implies B)", _named(B), P.generators, pnames))
    ab = _named(A) + _named(B)
    results.append(
        _span_check(
            "P <= (A u B)-span (A and B imply P)",
            _named(P),
            [g for _, g in ab],
            [n for n, _ in ab],
        )
    )
    results.append(
        InclusionResult(
            "C is the empty system",
            "certified" if C.is_empty() else "undecided",
            [(n, g) for n, g in _named(C)],
        )
    )
    results.append(_einstein_in_parallel(systems))
    return InclusionReport(results)


def _einstein_in_parallel(systems):
    """E generators are the Ricci components, and D rho is linear in rho."""
    analysis = systems.analysis
    rho = analysis.ricci.rho
    E = systems["E"]
    details = []
    nonzero_rho = {
        k: canonical_generator(v) for k, v in rho.items() if k[0] <= k[1] and not v.is_zero()
    }
    e_set = set(E.generators)
    rho_set = set(nonzero_rho.values())
    if systems.context == GENERAL:
        # with nonconstant trace, E constrains only the trace-free part
        same = False
    else:
        same = e_set == rho_set
    details.append(("E generators equal the nonzero Ricci components", same))
    abstract = nabla_ricci(abstract_ricci(), analysis.connection)
    names = {f"r{j}{k}" for j in IDX for k in IDX if j <= k}
    linear = all(
        v.is_zero() or is_linear_homogeneous(v, names) for v in abstract.components.values()
    )
    details.append(("D rho is linear-homogeneous in rho jets", linear))
    vanish = all(
        substitute(v, {n: 0 for n in names}).is_zero() for v in abstract.components.values()
    )
    details.append(("D rho vanishes when rho = 0", vanish))
    ok = same and linear and vanish
    return InclusionResult("E <= P (rho = 0 forces D rho = 0)", "certified" if ok else "undecided", details)


# -- comparison with published statements --------------------------------------------------

EXACT = "exact match"
MULTIPLE = "rational multiple"
COMBINATION = "linear combination"
UNMATCHED = "unmatched"


@dataclass
class Match:
    source: str
    kind: str
    detail: object = None
    derivative_of: int = None


@dataclass
class ComparisonReport:
    label: str
    published: list
    derived: list

    def published_all_matched(self):
        return all(m.kind != UNMATCHED for m in self.published)

    def derived_all_covered(self):
        return all(m.kind != UNMATCHED for m in self.derived)


def _match_one(target, basis, names):
    tc = canonical_generator(target)
    for n, b in zip(names, basis):
        if (target - b).is_zero():
            return EXACT, n
    for n, b in zip(names, basis):
        if canonical_generator(b) == tc:
            ratio = target / b
            return MULTIPLE, (n, ratio.constant_value())
    try:
        coeffs = linear_membership(target, basis, RATIONAL)
    except Exception:
        coeffs = None
    if coeffs is not None:
        return COMBINATION, [(n, c) for n, c in zip(names, coeffs) if c]
    return UNMATCHED, None


def compare_with_paper(derived, published, label=None, reverse=True):
    """Classify each published generator against the derived ones and vice versa.

    ``published`` holds NormalForms or (NormalForm, coordinate) pairs; a
    coordinate marks a generator known only up to a function independent of
    that coordinate, so its derivative is compared instead. With ``reverse``
    false only the published side is classified.
    """
    dgens = list(derived.generators)
    dnames = [f"{derived.label}{n + 1}" for n in range(len(dgens))]
    pub = []
    for item in published:
        if isinstance(item, tuple):
            pub.append(item)
        else:
            pub.append((item, None))
    checked = []
    out = []
    for n, (g, coord_) in enumerate(pub):
        target = g.diff(coord_) if coord_ else g
        kind, detail = _match_one(target, dgens, dnames)
        out.append(Match(f"published{n + 1}", kind, detail, coord_))
        checked.append(target)
    pnames = [f"published{n + 1}" for n in range(len(pub))]
    back = []
    for n, g in zip(dnames, dgens if reverse else []):
        kind, detail = _match_one(g, checked, pnames) if checked else (UNMATCHED, None)
        back.append(Match(n, kind, detail))
    return ComparisonReport(label or derived.label, out, back)


def published_restricted():
    """Published restricted-family systems, keyed by what they describe."""
    return {
        "E": [p for p in ref.system(ref.RESTRICTED_EINSTEIN)],
        "P-statement": [
            (NormalForm.lift(g), c)
            for g, c in zip(
                ref.system([t for t, _ in ref.PARALLEL_STATEMENT]),
                [c for _, c in ref.PARALLEL_STATEMENT],
            )
        ],
        "P-proof": ref.system(ref.PARALLEL_PROOF),
        "A": ref.system(ref.CYCLIC_STATEMENT),
        "B": ref.system(ref.CODAZZI_STATEMENT),
    }


def restricted_comparisons(systems=None):
    systems = systems or systems_for(RESTRICTED)
    pub = published_restricted()
    return {
        "E": compare_with_paper(systems["E"], pub["E"], "E"),
        "P-statement": compare_with_paper(systems["P"], pub["P-statement"], "P-statement"),
        "P-proof": compare_with_paper(systems["P"], pub["P-proof"], "P-proof"),
        "A": compare_with_paper(systems["A"], pub["A"], "A"),
        "B": compare_with_paper(systems["B"], pub["B"], "B"),
        # published Codazzi conditions against the wider parallel span
        "B-in-P": compare_with_paper(systems["P"], pub["B"], "B-in-P", reverse=False),
    }


def general_comparisons(systems=None):
    systems = systems or systems_for(GENERAL)
    return {"E": compare_with_paper(systems["E"], ref.system(ref.EINSTEIN_SYSTEM), "E")}


def killing_consistent(systems):
    """Killing-cubic coefficients and cyclic generators span the same space."""
    coeffs = [c for c in killing_coefficients(systems.analysis.nabla_ricci) if not c.is_zero()]
    A = systems["A"].generators
    forward = all(linear_membership(c, A, RATIONAL) is not None for c in coeffs)
    backward = all(linear_membership(g, coeffs, RATIONAL) is not None for g in A) if coeffs else not A
    return forward and backward
