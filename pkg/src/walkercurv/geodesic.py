"""Numeric geodesics: compiled evaluators and fixed-step RK4."""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .symcore import NormalForm, coord
from .walker import (
    VELOCITIES,
    christoffel,
    defining_function,
    energy_symbolic,
    geodesic_rhs_symbolic,
    metric,
)

COORD_ATOMS = tuple(coord(i) for i in (1, 2, 3, 4))
POLE_TOL = 1e-300
DIVERGENCE = 1e12


class UnresolvedSymbol(ValueError):
    pass


class PoleEvaluation(ArithmeticError):
    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class Divergence(ArithmeticError):
    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


def _poly_code(poly, mono_name):
    terms = []
    for mono, c in poly.sorted_terms():
        factors = [mono_name(mono)] if mono else []
        coeff = float(c)
        if factors:
            terms.append(factors[0] if coeff == 1.0 else f"{coeff!r} * {factors[0]}")
        else:
            terms.append(repr(coeff))
    return " + ".join(terms) if terms else "0.0"


def compile_many(exprs, inputs=COORD_ATOMS):
    """Compile expressions into one function of ``inputs`` returning a tuple.

    The generated code is straight-line: each atom power and each monomial
    is computed once and shared by every output.
    """
    exprs = [NormalForm.lift(e) for e in exprs]
    allowed = set(inputs)
    for e in exprs:
        extra = e.atoms() - allowed
        if extra:
            names = ", ".join(sorted(str(a) for a in extra))
            raise UnresolvedSymbol(f"cannot evaluate numerically, unresolved: {names}")
    arg_names = [f"_in{n}" for n in range(len(inputs))]
    arg_of = dict(zip(inputs, arg_names))
    lines = []
    powers = {}
    monos = {}

    def power_name(atom, e):
        key = (atom, e)
        if key not in powers:
            name = f"_p{len(powers)}"
            base = arg_of[atom]
            lines.append(f"    {name} = {base}" if e == 1 else f"    {name} = {base} ** {e}")
            powers[key] = name
        return powers[key]

    def mono_name(mono):
        if mono not in monos:
            parts = [power_name(a, e) for a, e in mono]
            if len(parts) == 1:
                monos[mono] = parts[0]
            else:
                name = f"_m{len(monos)}"
                lines.append(f"    {name} = {' * '.join(parts)}")
                monos[mono] = name
        return monos[mono]

    outs = []
    for n, e in enumerate(exprs):
        num = _poly_code(e.num, mono_name)
        if e.den.is_one():
            lines.append(f"    _o{n} = {num}")
        else:
            den = _poly_code(e.den, mono_name)
            lines.append(f"    _d{n} = {den}")
            lines.append(f"    if abs(_d{n}) < {POLE_TOL!r}:")
            msg = repr(f"denominator vanishes: {NormalForm(e.den)}")
            lines.append(f"        raise PoleEvaluation({msg})")
            lines.append(f"    _o{n} = ({num}) / _d{n}")
        outs.append(f"_o{n}")
    src = f"def _f({', '.join(arg_names)}):\n" + "\n".join(lines)
    src += f"\n    return ({', '.join(outs)}{',' if len(outs) == 1 else ''})\n"
    namespace = {"PoleEvaluation": PoleEvaluation}
    exec(compile(src, "<walkercurv-compiled>", "exec"), namespace)
    fn = namespace["_f"]
    fn.source = src
    return fn


def compile_expr(e, inputs=COORD_ATOMS):
    """Numeric evaluator ``f(x1, x2, x3, x4) -> float`` for one expression."""
    fn = compile_many([e], inputs)

    def evaluate(*args):
        return fn(*args)[0]

    evaluate.source = fn.source
    return evaluate


@dataclass
class GeodesicState:
    t: float
    x: tuple
    v: tuple


@dataclass
class Trajectory:
    samples: list = field(default_factory=list)
    energy: list = field(default_factory=list)
    steps: int = 0
    dt: float = 0.0

    @property
    def max_energy_drift(self):
        if not self.energy:
            return 0.0
        e0 = self.energy[0]
        return max(abs(e - e0) for e in self.energy)

    @property
    def final(self):
        return self.samples[-1]

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "x1", "x2", "x3", "x4", "v1", "v2", "v3", "v4", "energy"])
            for s, e in zip(self.samples, self.energy):
                w.writerow([repr(float(s.t))] + [repr(float(c)) for c in (*s.x, *s.v, e)])


class GeodesicSystem:
    """First-order system y = (x, v), y' = (v, accel(x, v)) for a concrete ``a``."""

    def __init__(self, a):
        a = NormalForm.lift(a)
        jets = [at for at in a.atoms() if not at.is_coord]
        if jets:
            raise UnresolvedSymbol(
                "defining function is not concrete: " + ", ".join(sorted(map(str, jets)))
            )
        self.a = a
        conn = christoffel(metric(a))
        rhs = geodesic_rhs_symbolic(conn)
        inputs = COORD_ATOMS + VELOCITIES
        self.accel = compile_many([rhs[k] for k in (1, 2, 3, 4)], inputs)
        self.energy_fn = compile_expr(energy_symbolic(a), inputs)
        self.rhs_exprs = rhs
        # sign of a's denominator; a sign change between steps means the
        # trajectory jumped across a pole
        self.locus = None if a.den.is_one() else compile_expr(NormalForm(a.den), COORD_ATOMS)

    @classmethod
    def from_spec(cls, spec):
        return cls(defining_function(spec))

    def derivative(self, y):
        return np.array((y[4], y[5], y[6], y[7], *self.accel(*y)))

    def energy(self, y):
        return float(self.energy_fn(*y))


def _floats(arr):
    return tuple(float(c) for c in arr)


def rk4_step(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(spec_or_system, x0, v0, t_end, dt):
    """Classic fixed-step RK4 from t = 0 to ``t_end``; the last step is shortened if needed."""
    if dt <= 0 or t_end <= 0:
        raise ValueError("dt and t_end must be positive")
    system = (
        spec_or_system
        if isinstance(spec_or_system, GeodesicSystem)
        else GeodesicSystem.from_spec(spec_or_system)
    )
    y = np.array([*map(float, x0), *map(float, v0)])
    if y.shape != (8,):
        raise ValueError("x0 and v0 need four components each")
    n = max(1, math.ceil(t_end / dt - 1e-9))
    traj = Trajectory(dt=dt)
    t = 0.0

    def record(t, y):
        traj.samples.append(GeodesicState(float(t), _floats(y[:4]), _floats(y[4:])))

    try:
        traj.energy.append(system.energy(y))
    except PoleEvaluation as exc:
        raise PoleEvaluation(str(exc), GeodesicState(t, _floats(y[:4]), _floats(y[4:]))) from None
    record(t, y)
    for step in range(n):
        h = dt if step < n - 1 else t_end - t
        last = traj.samples[-1]
        try:
            y_new = rk4_step(system.derivative, y, h)
            e_new = system.energy(y_new)
        except PoleEvaluation as exc:
            raise PoleEvaluation(str(exc), last) from None
        except (OverflowError, ZeroDivisionError) as exc:
            raise Divergence(str(exc), last) from None
        if not np.all(np.isfinite(y_new)) or np.max(np.abs(y_new)) > DIVERGENCE:
            raise Divergence(f"state exceeded {DIVERGENCE:g} at t = {t + h:g}", last)
        if system.locus is not None:
            if system.locus(*y[:4]) * system.locus(*y_new[:4]) <= 0:
                raise PoleEvaluation(
                    f"trajectory crosses the singular locus {NormalForm(system.a.den)} = 0 "
                    f"near t = {t + h:g}",
                    last,
                )
        y = y_new
        t = (step + 1) * dt if step < n - 1 else t_end
        record(t, y)
        traj.energy.append(e_new)
    traj.steps = n
    return traj
