"""Executable form of the squeezing/concurrence equivalence for parity states.

For every grid point the identities and piecewise relations are turned into
residuals; a grid summary keeps the worst residual of each and counts the
points where xi_T^2 < 1 and C > 0 disagree.
"""

from dataclasses import dataclass, field

from spinsq.analysis import StateReport, evaluate
from spinsq.families import build, family_specs, phi_grid, theta_grid

# residual name -> tolerance
TOLERANCES = {
    "key_identity": 1e-12,  # y^2 - v+ v- = -C_zz / 4
    "mutual_exclusion": 1e-12,  # (|u| - y)(y - sqrt(v+ v-)) <= 0, product form
    "exclusive_positivity": 1e-12,  # |u| - y and y - sqrt(v+ v-) never both > 0
    "varsigma_czz": 1e-12,  # varsigma^2 = 1 + (N-1) C_zz
    "varsigma_xstate": 1e-10,  # varsigma^2 = 1 - 4(N-1)(y + r)(y - r)
    "gamma_reduction": 1e-10,  # xi_T^2 = min(xi_S^2, varsigma^2)
    "planar_xi_t": 1e-10,  # |u| > y:  xi_T^2 = 1 - (N-1) C
    "planar_xi_s": 1e-10,  # |u| > y:  xi_S^2 = 1 - (N-1) C
    "axial_xi_t": 1e-10,  # y > r:    xi_T^2 = 1 - 2(N-1)(y + r) C
    "axial_xi_s": 1e-10,  # y > r:    xi_S^2 >= 1
}

PIECEWISE = ("planar_xi_t", "planar_xi_s", "axial_xi_t", "axial_xi_s")

# The product form is false whenever both factors are negative (|u| < y <
# sqrt(v+ v-), i.e. a non-entangled pair), so it is tallied but never gates.
DIAGNOSTIC = ("mutual_exclusion",)


def residuals(rep: StateReport):
    """Residual of every identity that applies at this point (parity states only)."""
    xp = rep.xparams
    if xp is None:
        raise ValueError("residuals need a state with the parity moment conditions")
    N = rep.moments.n_particles
    sq = rep.squeezing
    C = rep.concurrence
    r = xp.sqrt_vv
    absu = abs(xp.u)
    out = {
        "key_identity": abs(xp.y**2 - xp.v_plus * xp.v_minus + rep.czz / 4.0),
        "mutual_exclusion": max(0.0, (absu - xp.y) * (xp.y - r)),
        "exclusive_positivity": max(0.0, min(absu - xp.y, xp.y - r)),
        "varsigma_czz": abs(sq.varsigma2 - (1.0 + (N - 1) * rep.czz)),
        "varsigma_xstate": abs(sq.varsigma2 - (1.0 - 4.0 * (N - 1) * (xp.y + r) * (xp.y - r))),
        "gamma_reduction": abs(sq.xi_t2 - min(sq.xi_s2, sq.varsigma2)),
    }
    if absu > xp.y:
        out["planar_xi_t"] = abs(sq.xi_t2 - (1.0 - (N - 1) * C))
        out["planar_xi_s"] = abs(sq.xi_s2 - (1.0 - (N - 1) * C))
    if xp.y > r:
        out["axial_xi_t"] = abs(sq.xi_t2 - (1.0 - 2.0 * (N - 1) * (xp.y + r) * C))
        out["axial_xi_s"] = max(0.0, 1.0 - sq.xi_s2)
    return out


@dataclass
class GroupSummary:
    label: str
    points: int = 0
    agree: int = 0
    boundary: int = 0
    exclusive_hits: int = 0
    violations: list = field(default_factory=list)
    diagnostic_exceedances: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)
    worst_at: dict = field(default_factory=dict)

    def record(self, params, rep: StateReport, check_identities=True):
        self.points += 1
        sq_t, ent = rep.squeezed_t, rep.entangled
        if "boundary" in (sq_t, ent):
            self.boundary += 1
        elif sq_t == ent:
            self.agree += 1
        else:
            self.violations.append(("biconditional", params, rep.squeezing.xi_t2, rep.concurrence))
        if not check_identities or rep.xparams is None:
            return
        sq = rep.squeezing
        if sq.xi_s2 < 1.0 - 1e-9 and sq.varsigma2 < 1.0 - 1e-9:
            self.exclusive_hits += 1
            self.violations.append(("exclusive_squeezing", params, sq.xi_s2, sq.varsigma2))
        for name, val in residuals(rep).items():
            if val > self.worst.get(name, -1.0):
                self.worst[name] = val
                self.worst_at[name] = params
            if val <= TOLERANCES[name]:
                continue
            if name in DIAGNOSTIC:
                self.diagnostic_exceedances[name] = self.diagnostic_exceedances.get(name, 0) + 1
            else:
                self.violations.append((name, params, val, TOLERANCES[name]))

    @property
    def ok(self):
        return not self.violations


def grid_points(kind, N_values, theta_steps, phi_steps, n_prime=None):
    """Yield (params, state) over every valid n and the theta x phi grid."""
    thetas = theta_grid(theta_steps)
    phis = phi_grid(phi_steps)
    for N in N_values:
        for spec in family_specs(kind, N, n_prime):
            if kind == "single-dicke":
                yield spec.to_dict(), build(spec)
                continue
            for phi in phis:
                for theta in thetas:
                    s = spec.with_angles(theta, phi)
                    yield s.to_dict(), build(s)


def verify_family(kind, N_values, theta_steps=128, phi_steps=4, n_prime=None, label=None, theorem=True):
    summary = GroupSummary(label or (kind if n_prime is None else f"{kind} n'={n_prime}"))
    for params, state in grid_points(kind, N_values, theta_steps, phi_steps, n_prime):
        summary.record(params, evaluate(state), check_identities=theorem)
    return summary
