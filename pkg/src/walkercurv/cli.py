"""Command line: analyze, classify, verify and geodesic.

Every command builds one report dict. ``--json`` prints it as JSON (sorted
keys, validated against the shipped schema); otherwise a plain-text view of
the same dict is printed. Exit codes: 0 success, 2 bad input, 3 failed
internal or concordance check, 4 geodesic divergence or pole.
"""

import argparse
import hashlib
import json
import sys
from importlib import resources

from . import __version__
from .classify import CLASSES, membership, restricted_comparisons, general_comparisons, systems_for
from .concordance import comparison_dict, run_all
from .curvature import RICCI_KEYS, char_poly, metric_trace
from .exprparse import GENERAL, RESTRICTED, ParseError, parse, render
from .geodesic import Divergence, GeodesicSystem, PoleEvaluation, UnresolvedSymbol, integrate
from .pipeline import Analysis
from .symcore import ArgumentViolation, DivisionByZero, NormalForm
from .walker import IDX, defining_function, determinant

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CHECK = 3
EXIT_NUMERIC = 4

# published statements compared against each class, by context
PAPER_DIFFS = {
    RESTRICTED: {"E": ["E"], "P": ["P-statement", "P-proof"], "A": ["A"], "B": ["B", "B-in-P"], "C": []},
    GENERAL: {"E": ["E"], "P": [], "A": [], "B": [], "C": []},
}


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


def load_schema():
    text = resources.files("walkercurv").joinpath("report.schema.json").read_text("utf-8")
    return json.loads(text)


def _read_input(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None
    try:
        spec = parse(data)
    except ParseError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from None
    return spec, {"path": path, "sha256": hashlib.sha256(data).hexdigest()}


def _section(entries, convention):
    comps = [{"index": ",".join(map(str, k)), "value": render(v)} for k, v in entries if not v.is_zero()]
    return {"convention": convention, "count": len(comps), "components": comps}


def tensor_report(an):
    m, conn, R, rd = an.metric, an.connection, an.riemann, an.ricci
    pairs = [(i, j) for i in IDX for j in IDX if i <= j]
    cp = char_poly(rd)
    return {
        "metric": _section([(k, m.g[k]) for k in pairs], "i,j with i <= j"),
        "inverse_metric": _section([(k, m.ginv[k]) for k in pairs], "i,j with i <= j"),
        "connection": _section(sorted(conn.items()), "k,i,j for Gamma^k_ij, i <= j"),
        "curvature": _section([(r, R[r]) for r in R.representatives()], "i,j,k,l for R_ijkl, canonical representatives"),
        "ricci": _section([(k, rd.rho[k]) for k in RICCI_KEYS], "j,k with j <= k"),
        "scalar_curvature": _section([((), rd.tau)], "scalar"),
        "einstein_tensor": _section([(k, rd.F[k]) for k in RICCI_KEYS], "j,k for rho - tau/4 g, j <= k"),
        "ricci_operator": _section(sorted(rd.Q.items()), "i,j for Q^i_j"),
        "characteristic_polynomial": _section([((), cp)], "det(Q - lam I)"),
        "nabla_ricci": _section(sorted(an.nabla_ricci.components.items()), "i,j,k for (D_i rho)_jk, j <= k"),
    }


def run_analyze(args):
    spec, info = _read_input(args.input)
    an = Analysis(defining_function(spec))
    report = _base("analyze", info)
    report["tensors"] = tensor_report(an)
    if not determinant(an.metric.g) == NormalForm.const(1):
        raise _fail(report, EXIT_CHECK, "internal check failed: det g != 1")
    if not metric_trace(an.ricci.F, an.metric).is_zero():
        raise _fail(report, EXIT_CHECK, "internal check failed: trace of the Einstein tensor is nonzero")
    return report


def _parse_classes(text):
    tags = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in tags if t not in CLASSES]
    if bad or not tags:
        raise CliError(EXIT_INPUT, f"--classes takes a subset of {','.join(CLASSES)}")
    return [t for t in CLASSES if t in tags]


def run_classify(args):
    spec, info = _read_input(args.input)
    tags = _parse_classes(args.classes)
    systems = systems_for(spec.mode)
    verdicts = []
    locus = None
    try:
        for t in tags:
            v = membership(spec, t, systems)
            locus = v.singular_locus
            verdicts.append(
                {
                    "class": t,
                    "status": v.status,
                    "generators": len(systems[t]),
                    "residuals": [render(r) for r in v.residuals],
                }
            )
    except (ArgumentViolation, DivisionByZero) as exc:
        raise CliError(EXIT_INPUT, f"{args.input}: {exc}") from None
    section = {
        "context": spec.mode,
        "defaulted": list(spec.defaulted),
        "singular_locus": None if locus is None else f"{render(NormalForm(locus))} = 0",
        "verdicts": verdicts,
        "paper_diff": None,
    }
    if args.paper_diff:
        comps = restricted_comparisons(systems) if spec.mode == RESTRICTED else general_comparisons(systems)
        labels = [lab for t in tags for lab in PAPER_DIFFS[spec.mode][t]]
        section["paper_diff"] = {lab: comparison_dict(comps[lab]) for lab in labels}
    report = _base("classify", info)
    report["classification"] = section
    return report


STRICT_EXTRA = ("covariant derivative of Ricci",)


def run_verify(args):
    checks = run_all()
    report = _base("verify", None)
    failing = [c for c in checks if not c.passed and (c.must or (args.strict and c.name in STRICT_EXTRA))]
    report["concordance"] = {
        "strict": bool(args.strict),
        "must_clean": all(c.passed for c in checks if c.must),
        "checks": [c.as_dict() for c in checks],
    }
    if failing:
        raise _fail(report, EXIT_CHECK, f"check failed: {failing[0].name}")
    return report


def _vector(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four comma-separated reals, got {text!r}") from None
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected four comma-separated reals, got {text!r}")
    return parts


def _state(s):
    return None if s is None else {"t": s.t, "x": list(s.x), "v": list(s.v)}


def run_geodesic(args):
    spec, info = _read_input(args.input)
    if not spec.is_concrete():
        raise CliError(EXIT_INPUT, f"{args.input}: every declared function needs a definition")
    try:
        system = GeodesicSystem.from_spec(spec)
    except UnresolvedSymbol as exc:
        raise CliError(EXIT_INPUT, f"{args.input}: {exc}") from None
    locus = None if system.a.den.is_one() else f"{render(NormalForm(system.a.den.monic()))} = 0"
    section = {
        "x0": args.x0,
        "v0": args.v0,
        "t_end": args.t,
        "dt": args.dt,
        "singular_locus": locus,
        "csv": args.output,
        "steps": None,
        "final": None,
        "energy_initial": None,
        "max_energy_drift": None,
        "error": None,
    }
    report = _base("geodesic", info)
    report["geodesic"] = section
    try:
        traj = integrate(system, args.x0, args.v0, args.t, args.dt)
    except (Divergence, PoleEvaluation) as exc:
        kind = "divergence" if isinstance(exc, Divergence) else "pole"
        section["error"] = {"kind": kind, "message": str(exc), "last_state": _state(exc.state)}
        raise _fail(report, EXIT_NUMERIC, f"{kind}: {exc}") from None
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    if args.output:
        traj.write_csv(args.output)
    section.update(
        steps=traj.steps,
        final=_state(traj.final),
        energy_initial=traj.energy[0],
        max_energy_drift=traj.max_energy_drift,
    )
    return report


def _base(command, info):
    return {
        "tool": {"name": "walkercurv", "version": __version__},
        "command": command,
        "input": info,
        "tensors": None,
        "classification": None,
        "concordance": None,
        "geodesic": None,
        "exit_code": EXIT_OK,
        "message": "ok",
    }


class _ReportFailure(Exception):
    def __init__(self, report):
        super().__init__(report["message"])
        self.report = report


def _fail(report, code, message):
    report["exit_code"] = code
    report["message"] = message
    return _ReportFailure(report)


# -- text rendering ---------------------------------------------------------------


def format_text(report):
    out = [f"walkercurv {report['tool']['version']} {report['command']}"]
    if report["input"]:
        out.append(f"input {report['input']['path']} sha256 {report['input']['sha256']}")
    if report["tensors"]:
        for name, sec in report["tensors"].items():
            out.append(f"[{name}] {sec['count']} components ({sec['convention']})")
            for c in sec["components"]:
                idx = f"{c['index']}: " if c["index"] else ""
                out.append(f"  {idx}{c['value']}")
    cl = report["classification"]
    if cl:
        out.append(f"context {cl['context']}")
        if cl["defaulted"]:
            out.append(f"defaulted to 0: {', '.join(cl['defaulted'])}")
        if cl["singular_locus"]:
            out.append(f"singular locus {cl['singular_locus']}")
        for v in cl["verdicts"]:
            out.append(f"[{v['class']}] {v['status']} ({v['generators']} generators)")
            for r in v["residuals"]:
                out.append(f"  residual {r}")
        for label, diff in (cl["paper_diff"] or {}).items():
            out.append(f"[paper diff {label}]")
            out.extend(_diff_lines(diff))
    co = report["concordance"]
    if co:
        for c in co["checks"]:
            flag = "PASS" if c["passed"] else "FAIL"
            kind = "must" if c["must"] else "report"
            out.append(f"{flag} [{kind}] {c['name']}: {c['summary']}")
            for d in c["discrepancies"]:
                out.append(f"  {json.dumps(d, sort_keys=True)}")
        out.append(f"must-match set clean: {co['must_clean']}")
    geo = report["geodesic"]
    if geo:
        out.append(f"x0 {geo['x0']} v0 {geo['v0']} t {geo['t_end']!r} dt {geo['dt']!r}")
        if geo["singular_locus"]:
            out.append(f"singular locus {geo['singular_locus']}")
        if geo["error"]:
            s = geo["error"]["last_state"]
            out.append(f"{geo['error']['kind']}: {geo['error']['message']}")
            if s:
                out.append(f"last good state t={s['t']!r} x={s['x']} v={s['v']}")
        else:
            s = geo["final"]
            out.append(f"steps {geo['steps']}")
            out.append(f"final t={s['t']!r} x={s['x']} v={s['v']}")
            out.append(f"energy {geo['energy_initial']!r} max drift {geo['max_energy_drift']!r}")
            if geo["csv"]:
                out.append(f"trajectory written to {geo['csv']}")
    out.append(f"exit {report['exit_code']}: {report['message']}")
    return "\n".join(out) + "\n"


def _diff_lines(diff):
    lines = []
    for side in ("published", "derived"):
        for m in diff[side]:
            extra = f" via {m['detail']}" if m.get("detail") else ""
            d = m.get("differentiated_in")
            if d:
                extra += f" (after d/d{d})"
            lines.append(f"  {side} {m['generator']}: {m['match']}{extra}")
    return lines


# -- entry point --------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="walkercurv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"walkercurv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("-i", "--input", required=True, help="problem file")
        sp.add_argument("--json", action="store_true", help="print the report as JSON")

    sp = sub.add_parser("analyze", help="metric, connection, curvature, Ricci data")
    common(sp)
    sp = sub.add_parser("classify", help="membership in the classes E, P, A, B, C")
    common(sp)
    sp.add_argument("--classes", default=",".join(CLASSES))
    sp.add_argument("--paper-diff", action="store_true", help="compare with the published systems")
    sp = sub.add_parser("verify", help="concordance with the published closed forms")
    common(sp, needs_input=False)
    sp.add_argument("--strict", action="store_true", help="also fail on the D rho table")
    sp = sub.add_parser("geodesic", help="integrate a geodesic with RK4")
    common(sp)
    sp.add_argument("--x0", type=_vector, required=True)
    sp.add_argument("--v0", type=_vector, required=True)
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--dt", type=float, default=1e-3)
    sp.add_argument("-o", "--output", help="CSV trajectory path")
    return p


COMMANDS = {"analyze": run_analyze, "classify": run_classify, "verify": run_verify, "geodesic": run_geodesic}


def emit(report, as_json, stream):
    if as_json:
        stream.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        stream.write(format_text(report))


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except _ReportFailure as exc:
        emit(exc.report, args.json, stdout)
        stderr.write(f"walkercurv: {exc.report['message']}\n")
        return exc.report["exit_code"]
    except CliError as exc:
        stderr.write(f"walkercurv: {exc.message}\n")
        return exc.code
    emit(report, args.json, stdout)
    return EXIT_OK
