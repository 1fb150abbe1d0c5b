import random
from fractions import Fraction

import pytest

from walkercurv import reference as ref
from walkercurv.classify import (
    CLASSES,
    COMBINATION,
    EXACT,
    FAILS,
    HOLDS,
    HOLDS_OFF_SINGULAR,
    MULTIPLE,
    UNMATCHED,
    InclusionUndecided,
    InclusionReport,
    InclusionResult,
    compare_with_paper,
    constant_scalar_system,
    derive_systems,
    general_comparisons,
    inclusion_checks,
    killing_consistent,
    membership,
    restricted_comparisons,
    singular_locus,
    squarefree,
    systems_for,
)
from walkercurv.exprparse import GENERAL, RESTRICTED, parse, parse_normal, render
from walkercurv.pipeline import Analysis
from walkercurv.symcore import RATIONAL, linear_membership, substitute
from walkercurv.systems import PDESystem, canonical_generator
from walkercurv.walker import IDX

FUNCS = {"b": (3, 4), "c": (3, 4), "d": (3, 4)}
EXAMPLE = "func b(x3,x4) = 1/(2 - x3/2 - x4/2)\nfunc c(x3,x4) = 1/(2 - x3/2 - x4/2)\nfunc d(x3,x4) = 0\n"


def B(text):
    return parse_normal(text, FUNCS)


@pytest.fixture(scope="module")
def rs():
    return systems_for(RESTRICTED)


@pytest.fixture(scope="module")
def gs():
    return systems_for(GENERAL)


# -- derived systems --------------------------------------------------------------


def test_system_sizes(rs, gs):
    assert [len(rs[t]) for t in CLASSES] == [3, 6, 4, 2, 0]
    assert [len(gs[t]) for t in CLASSES] == [5, 24, 14, 16, 4]


def test_restricted_generators_free_of_d(rs):
    for t in CLASSES:
        for g in rs[t]:
            assert all(a.name != "d" for a in g.atoms() if a.is_jet)


def test_restricted_einstein_matches_published(rs):
    published = ref.system(ref.RESTRICTED_EINSTEIN)
    derived = {canonical_generator(g) for g in rs["E"]}
    assert derived == {canonical_generator(p) for p in published}
    assert canonical_generator(B("b_3 - b^2/2")) in derived


def test_general_einstein_matches_published(gs):
    comp = general_comparisons(gs)["E"]
    assert comp.published_all_matched() and comp.derived_all_covered()


def test_parallel_generators_match_proof_list(rs):
    proof = {canonical_generator(p) for p in ref.system(ref.PARALLEL_PROOF)}
    assert {canonical_generator(g) for g in rs["P"]} == proof
    assert B("b*b_3 - b_33") in rs["P"].generators


def test_cyclic_and_codazzi_entries(rs):
    nr = rs.analysis.nabla_ricci
    a_333 = canonical_generator(3 * nr[3, 3, 3])
    assert a_333 == rs["A"].generators[0]
    assert canonical_generator(2 * nr[3, 3, 4] + nr[4, 3, 3]) == rs["A"].generators[1]
    assert canonical_generator(nr[3, 3, 4] - nr[4, 3, 3]) == rs["B"].generators[0]
    # the first published cyclic condition is the first parallel generator up to the canonical sign
    first = ref.system(ref.CYCLIC_STATEMENT)[0]
    assert first == -rs["P"].generators[0]


def test_constant_scalar_system():
    assert constant_scalar_system(Analysis(parse_normal("x1^3")).ricci).generators == [parse_normal("1")]
    assert constant_scalar_system(Analysis(parse_normal("0")).ricci).is_empty()


def test_pdesystem_dedup():
    s = PDESystem.build("T", GENERAL, [("u", parse_normal("2*x1")), ("v", parse_normal("-x1")), ("w", parse_normal("0"))])
    assert len(s) == 1
    assert s.origins[0] == ["u", "v"]


# -- membership ------------------------------------------------------------------------


def test_example_holds_everywhere_off_pole(rs):
    spec = parse(EXAMPLE)
    for t in CLASSES:
        v = membership(spec, t, rs)
        assert v.status == (HOLDS_OFF_SINGULAR if t != "C" else HOLDS_OFF_SINGULAR)
        assert v.holds
    assert render(membership(spec, "E", rs).singular_locus and parse_normal("x3 + x4 - 4")) == "x3 + x4 - 4"
    assert singular_locus(spec.bindings()) == parse_normal("x3 + x4 - 4").num


def test_p_fails_for_b_equal_x3(rs):
    v = membership(parse("func b(x3,x4) = x3\nfunc c(x3,x4) = 0"), "P", rs)
    assert v.status == FAILS
    assert [render(r) for r in v.residuals] == ["x3"]


def test_ricci_flat_case_holds(rs):
    spec = parse("func b(x3,x4) = 0\nfunc c(x3,x4) = 0\nfunc d(x3,x4) = x3^5 - x4")
    assert all(membership(spec, t, rs).status == HOLDS for t in CLASSES)


def test_linear_bc_case(rs):
    spec = parse("func b(x3,x4) = x3\nfunc c(x3,x4) = x4")
    verdicts = {t: membership(spec, t, rs) for t in CLASSES}
    assert [verdicts[t].status for t in CLASSES] == [FAILS, FAILS, FAILS, FAILS, HOLDS]
    assert [render(r) for r in verdicts["A"].residuals] == ["2*x3", "-2*x4", "-2*x3", "-2*x4"]


def test_arbitrary_functions_are_conditional(rs):
    v = membership(parse("func b(x3,x4)\nfunc c(x3,x4) = 0"), "P", rs)
    assert v.status == "conditional"


def test_general_context_membership(gs):
    spec = parse("func a(x1,x2,x3,x4) = x1^3")
    assert membership(spec, "C", gs).status == FAILS
    assert membership(parse("func a(x1,x2,x3,x4) = x3*x4"), "P", gs).holds


def test_unknown_class(rs):
    with pytest.raises(ValueError):
        membership(parse(EXAMPLE), "Z", rs)


def test_squarefree():
    p = parse_normal("(x3 + x4 - 4)^2*(x3 - 1)").num
    assert squarefree(p) == parse_normal("(x3 + x4 - 4)*(x3 - 1)").num


CORPUS = [
    EXAMPLE,
    "func b(x3,x4) = 0\nfunc c(x3,x4) = 0",
    "func b(x3,x4) = x3\nfunc c(x3,x4) = x4",
    "func b(x3,x4) = x3\nfunc c(x3,x4) = 0",
    "func b(x3,x4) = -2/x3\nfunc c(x3,x4) = 0",
    "func b(x3,x4) = 0\nfunc c(x3,x4) = -2/x4",
    "func b(x3,x4) = 2\nfunc c(x3,x4) = 0",
    "func b(x3,x4) = x4\nfunc c(x3,x4) = x3",
    "func b(x3,x4) = 1/(1 - x3/2)\nfunc c(x3,x4) = 0",
]


@pytest.mark.parametrize("text", CORPUS)
def test_membership_consistency(rs, text):
    spec = parse(text)
    v = {t: membership(spec, t, rs).holds for t in CLASSES}
    if v["P"]:
        assert v["A"] and v["B"]
    if v["E"]:
        assert v["P"]
    if v["A"] and v["B"]:
        assert v["P"]
    assert v["C"]


def _raw_generators(analysis):
    """Class generators before deduplication."""
    nr, rd = analysis.nabla_ricci, analysis.ricci
    from itertools import combinations_with_replacement

    raw = {
        "E": [rd.F[j, k] for j in IDX for k in IDX],
        "P": [nr[i, j, k] for i in IDX for j in IDX for k in IDX],
        "A": [nr[i, j, k] + nr[j, i, k] + nr[k, j, i] for i, j, k in combinations_with_replacement(IDX, 3)],
        "B": [nr[i, j, k] - nr[j, i, k] for i in IDX for j in IDX for k in IDX],
        "C": [rd.tau.diff(i) for i in IDX],
    }
    return raw


def _random_instance(rng):
    pieces = ["0", "1", "2", "x3", "x4", "x3*x4", "x3^2", "-2/x3", "1/(1 + x4^2)", "x3 - x4"]
    b = rng.choice(pieces)
    c = rng.choice(pieces)
    return f"func b(x3,x4) = {b}\nfunc c(x3,x4) = {c}"


def test_dedup_soundness(rs):
    raw = _raw_generators(rs.analysis)
    rng = random.Random(11)
    for _ in range(20):
        spec = parse(_random_instance(rng))
        bindings = spec.bindings()
        for t in CLASSES:
            raw_zero = all(substitute(g, bindings).is_zero() for g in raw[t])
            assert raw_zero == membership(spec, t, rs).holds, (t, spec.definitions)


# -- inclusions and comparisons ---------------------------------------------------------


def test_inclusions_certified(rs):
    report = inclusion_checks(rs)
    assert report.all_certified()
    report.raise_for_undecided()


def test_inclusions_general(gs):
    report = inclusion_checks(gs)
    statuses = {r.claim: r.status for r in report.results}
    assert statuses["A <= P-span (P implies A)"] == "certified"
    assert statuses["B <= P-span (P implies B)"] == "certified"
    # with general a, tau is not constant and E no longer sits inside P
    assert statuses["C is the empty system"] == "undecided"


def test_undecided_raises():
    with pytest.raises(InclusionUndecided):
        InclusionReport([InclusionResult("claim", "undecided")]).raise_for_undecided()


def test_membership_example_p_combination(rs):
    P = rs["P"].generators
    coeffs = linear_membership(P[1] + 4 * P[3], P, RATIONAL)
    assert coeffs == [0, 1, 0, 4, 0, 0]


def test_killing_cubic(rs):
    assert killing_consistent(rs)


def test_restricted_comparisons(rs):
    comps = restricted_comparisons(rs)
    e = comps["E"]
    assert e.published_all_matched() and e.derived_all_covered()
    assert all(m.kind in (EXACT, MULTIPLE) for m in e.published)

    stmt = comps["P-statement"]
    assert stmt.published_all_matched()
    # b^2 - 2 b_3 differentiated in x3 is 2 (b b_3 - b_33)
    first = stmt.published[0]
    assert first.derivative_of == 3 and first.kind == MULTIPLE and first.detail[1] == 2

    assert comps["P-proof"].published_all_matched() and comps["P-proof"].derived_all_covered()

    a = comps["A"]
    assert a.published_all_matched()
    assert [m.kind == UNMATCHED for m in a.derived] == [False, True, True, False]

    b = comps["B"]
    assert not b.published_all_matched()
    bp = comps["B-in-P"]
    assert all(m.kind == COMBINATION for m in bp.published)
    assert bp.published[0].detail == [("P2", Fraction(-1)), ("P4", Fraction(2))]
    # the derived Codazzi generator uses 4 where the published one uses 2
    assert linear_membership(rs["B"].generators[0], rs["P"].generators, RATIONAL) == [0, 1, 0, -4, 0, 0]


def test_compare_with_paper_self(rs):
    comp = compare_with_paper(rs["P"], list(rs["P"].generators))
    assert all(m.kind == EXACT for m in comp.published + comp.derived)


def test_derive_systems_flat():
    s = derive_systems(Analysis(parse_normal("0")), GENERAL)
    assert all(s[t].is_empty() for t in CLASSES)
