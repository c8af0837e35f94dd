"""Squeezing parameters xi_S^2, varsigma^2 and xi_T^2 from collective moments."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from spinsq import smallmat
from spinsq.dicke import CollectiveMoments, mean_spin_direction
from spinsq.errors import NumericalError, PreconditionError

# shared with the entanglement side so that "strictly below 1" and
# "strictly positive" mean the same thing everywhere
THRESHOLD_BAND = 1e-9

_E = np.eye(3)


def perpendicular_basis(axis):
    """Deterministic orthonormal pair (e1, e2) spanning the plane normal to ``axis``."""
    e3 = np.asarray(axis, dtype=float)
    cross = np.cross(_E[2], e3)
    norm = np.linalg.norm(cross)
    e1 = _E[0].copy() if norm < 1e-9 else cross / norm
    e2 = np.cross(e3, e1)
    return e1, e2


def _min_eig2(a, b, d):
    """Smaller eigenvalue of [[a, b], [b, d]]."""
    return 0.5 * (a + d) - np.hypot(0.5 * (a - d), b)


def xi_s_general(m: CollectiveMoments) -> float:
    """4/N times the least spin variance perpendicular to the mean spin.

    With vanishing mean spin no plane is singled out and the minimum is taken
    over every direction instead.
    """
    gamma = m.gamma
    axis = mean_spin_direction(m)
    if axis is None:
        return 4.0 * smallmat.sym3_eig_min(gamma) / m.n_particles
    e1, e2 = perpendicular_basis(axis)
    a = e1 @ gamma @ e1
    d = e2 @ gamma @ e2
    b = e1 @ gamma @ e2
    return float(4.0 * _min_eig2(a, b, d) / m.n_particles)


def xi_s_parity(m: CollectiveMoments) -> float:
    """(2/N) (<J_x^2 + J_y^2> - |<J_-^2>|), valid when the mean spin sits on z."""
    bad = m.parity_violations()
    if bad:
        raise PreconditionError("parity conditions violated: " + "; ".join(bad))
    G = m.G
    return float(2.0 / m.n_particles * (G[0, 0] + G[1, 1] - abs(m.jminus2)))


def varsigma(m: CollectiveMoments) -> float:
    """(4/N^2) [N Var(J_n) + <J_n>^2] along the mean-spin axis (z when it vanishes)."""
    N = m.n_particles
    axis = mean_spin_direction(m)
    if axis is None or m.has_parity_symmetry():
        axis = _E[2]
    var = axis @ m.gamma @ axis
    mean = axis @ m.j1
    return float(4.0 / N**2 * (N * var + mean * mean))


def gamma_matrix(m: CollectiveMoments):
    return (m.n_particles - 1) * m.gamma + m.G


@dataclass(frozen=True)
class SqueezingReport:
    xi_s2: float
    varsigma2: float
    xi_t2: float
    lambda_min: float
    branch: str
    mean_spin: Optional[tuple]
    denominator: float

    @property
    def degenerate(self):
        return self.mean_spin is None

    def to_dict(self):
        return {
            "xi_s2": self.xi_s2,
            "varsigma2": self.varsigma2,
            "xi_t2": self.xi_t2,
            "lambda_min": self.lambda_min,
            "branch": self.branch,
            "mean_spin": None if self.mean_spin is None else list(self.mean_spin),
            "mean_spin_degenerate": self.degenerate,
            "denominator": self.denominator,
        }


def xi_t(m: CollectiveMoments) -> SqueezingReport:
    """Full report; xi_T^2 is lambda_min of (N-1) gamma + G over <J^2> - N/2."""
    N = m.n_particles
    lam = smallmat.sym3_eig_min(gamma_matrix(m))
    denom = m.j_squared - N / 2.0
    if denom <= 0.0:
        raise NumericalError(f"non-positive denominator <J^2> - N/2 = {denom!r}")
    xt = lam / denom
    vs = varsigma(m)
    if m.has_parity_symmetry():
        # the mean spin is on z even where <J_z> happens to vanish
        xs = xi_s_parity(m)
        branch = "planar" if xs <= vs else "axial"
    else:
        xs = xi_s_general(m)
        branch = "general"
    axis = mean_spin_direction(m)
    return SqueezingReport(
        xi_s2=xs,
        varsigma2=vs,
        xi_t2=float(xt),
        lambda_min=float(lam),
        branch=branch,
        mean_spin=None if axis is None else tuple(float(x) for x in axis),
        denominator=float(denom),
    )


def classify_below_one(value, band=THRESHOLD_BAND):
    """'yes' if value < 1 - band, 'no' if value > 1 + band, 'boundary' otherwise."""
    if value < 1.0 - band:
        return "yes"
    if value > 1.0 + band:
        return "no"
    return "boundary"
