"""Theta/phi scans of a state family and bisection of threshold crossings."""

import csv
import io
import math
from dataclasses import astuple, dataclass, fields

from spinsq.analysis import StateReport, evaluate
from spinsq.errors import ParameterError
from spinsq.families import FamilySpec, build, phi_grid, theta_grid
from spinsq.squeezing import THRESHOLD_BAND

BISECT_WIDTH = 1e-10


@dataclass(frozen=True)
class SweepRecord:
    N: int
    n: int
    n_prime: int
    theta: float
    phi: float
    xi_s2: float
    varsigma2: float
    xi_t2: float
    lambda_min: float
    concurrence: float
    branch: str
    squeezed_T: str
    entangled: str
    parity: str

    @classmethod
    def from_report(cls, spec: FamilySpec, rep: StateReport):
        sq = rep.squeezing
        return cls(
            spec.N, spec.n, spec.offset, spec.theta, spec.phi,
            sq.xi_s2, sq.varsigma2, sq.xi_t2, sq.lambda_min, rep.concurrence,
            sq.branch, rep.squeezed_t, rep.entangled, rep.parity,
        )  # fmt: skip


FIELDS = tuple(f.name for f in fields(SweepRecord))


@dataclass(frozen=True)
class Crossing:
    quantity: str
    phi: float
    theta: float


# signed distance from each threshold; a sign change is a crossing
QUANTITIES = {
    "xi_s2=1": lambda rep: rep.squeezing.xi_s2 - 1.0,
    "xi_t2=1": lambda rep: rep.squeezing.xi_t2 - 1.0,
    "C=0": lambda rep: rep.entanglement_margin,
}


def _sign(x, band=THRESHOLD_BAND):
    if x > band:
        return 1
    if x < -band:
        return -1
    return 0


def bisect_crossing(f, lo, hi, width=BISECT_WIDTH):
    """Shrink [lo, hi] (f changing sign) to ``width`` and return the midpoint."""
    flo = f(lo)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def locate_crossings(spec: FamilySpec, thetas, values, quantity):
    """Bisect every sign change of ``values`` (outside the boundary band) along theta."""
    func = QUANTITIES[quantity]

    def f(theta):
        return func(evaluate(build(spec.with_angles(theta))))

    signed = [(t, _sign(v)) for t, v in zip(thetas, values) if _sign(v) != 0]
    found = []
    for (t0, s0), (t1, s1) in zip(signed, signed[1:]):
        if s0 != s1:
            found.append(Crossing(quantity, spec.phi, bisect_crossing(f, t0, t1)))
    return found


def run_sweep(template: FamilySpec, theta_steps, phi_steps=1):
    """Records in (phi, theta) grid order plus all located crossings."""
    if theta_steps < 2:
        raise ParameterError("a sweep needs at least 2 theta points")
    if template.kind in ("single-dicke", "custom-file"):
        raise ParameterError(f"{template.kind} has no angles to sweep")
    phis = [template.phi] if phi_steps <= 1 else phi_grid(phi_steps)
    thetas = theta_grid(theta_steps)
    records, crossings = [], []
    for phi in phis:
        row_spec = template.with_angles(0.0, phi)
        reports = []
        for theta in thetas:
            spec = row_spec.with_angles(theta)
            rep = evaluate(build(spec))
            reports.append(rep)
            records.append(SweepRecord.from_report(spec, rep))
        for name, func in QUANTITIES.items():
            crossings += locate_crossings(row_spec, thetas, [func(r) for r in reports], name)
    return records, crossings


def fmt(value):
    """Shortest round-trip text for floats, plain str otherwise."""
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(value)
    return str(value)


def to_csv(records, crossings):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for rec in records:
        w.writerow([fmt(x) for x in astuple(rec)])
    buf.write("\n# crossings\n")
    w.writerow(("quantity", "phi", "theta"))
    for c in crossings:
        w.writerow((c.quantity, fmt(c.phi), fmt(c.theta)))
    return buf.getvalue()


def to_json_obj(records, crossings):
    return {
        "records": [dict(zip(FIELDS, astuple(r))) for r in records],
        "crossings": [{"quantity": c.quantity, "phi": c.phi, "theta": c.theta} for c in crossings],
    }
