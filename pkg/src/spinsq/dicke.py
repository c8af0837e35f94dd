"""Symmetric N-qubit states in the Dicke basis and their collective moments.

Slot ``n`` of the amplitude vector holds the coefficient of the Dicke state
with ``n`` excitations (spins up); ``n = 0`` is the all-down state with
``J_z = -N/2``.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from spinsq.errors import ParameterError, PreconditionError

NORM_TOL = 1e-12
FILE_NORM_TOL = 1e-6
DEGENERATE_SPIN = 1e-9
PARITY_TOL = 1e-9


@dataclass(frozen=True)
class SymmetricState:
    n_particles: int
    amplitudes: np.ndarray

    def __post_init__(self):
        N = self.n_particles
        if not isinstance(N, (int, np.integer)) or N < 2:
            raise ParameterError(f"need an integer N >= 2, got {N!r}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (N + 1,):
            raise ParameterError(f"N={N} needs {N + 1} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ParameterError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise PreconditionError(f"state is not normalized (sum |c|^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "n_particles", int(N))
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize=True):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if normalize:
            norm = math.sqrt(float(np.vdot(amps, amps).real))
            if norm == 0.0:
                raise ParameterError("zero vector cannot be normalized")
            amps = amps / norm
        return cls(amps.size - 1, amps)

    @classmethod
    def dicke(cls, N, n):
        if not 0 <= n <= N:
            raise ParameterError(f"excitation number {n} outside 0..{N}")
        amps = np.zeros(N + 1, dtype=complex)
        amps[n] = 1.0
        return cls(N, amps)

    def support_parity(self, tol=0.0):
        """'even' or 'odd' if only even (odd) excitation numbers are populated, else 'none'."""
        occupied = np.nonzero(np.abs(self.amplitudes) > tol)[0]
        if np.all(occupied % 2 == 0):
            return "even"
        if np.all(occupied % 2 == 1):
            return "odd"
        return "none"


def _ladder_up_coeffs(N):
    n = np.arange(N)
    return np.sqrt((n + 1.0) * (N - n))


def apply_jz(state):
    """Unnormalized image ``J_z |psi>`` as an amplitude vector."""
    N = state.n_particles
    return (np.arange(N + 1) - N / 2.0) * state.amplitudes


def apply_jplus(state):
    return _jplus(state.n_particles, state.amplitudes)


def apply_jminus(state):
    return _jminus(state.n_particles, state.amplitudes)


def _jplus(N, c):
    out = np.zeros(N + 1, dtype=complex)
    out[1:] = _ladder_up_coeffs(N) * c[:-1]
    return out


def _jminus(N, c):
    out = np.zeros(N + 1, dtype=complex)
    # sqrt(n (N - n + 1)) for n = 1..N is the same table shifted by one
    out[:-1] = _ladder_up_coeffs(N) * c[1:]
    return out


def expect_jminus2(state):
    """<J_-^2>, complex."""
    N, c = state.n_particles, state.amplitudes
    return complex(np.vdot(c, _jminus(N, _jminus(N, c))))


def expect_jplus2(state):
    N, c = state.n_particles, state.amplitudes
    return complex(np.vdot(c, _jplus(N, _jplus(N, c))))


@dataclass(frozen=True)
class CollectiveMoments:
    """First moments and symmetrized second moments of (J_x, J_y, J_z)."""

    n_particles: int
    j1: np.ndarray
    G: np.ndarray
    # (P_upup, P_updown, P_downdown) for one ordered pair; None means derive from G
    pair_populations: Optional[np.ndarray] = None

    def __post_init__(self):
        j1 = np.array(self.j1, dtype=float).reshape(3)
        G = np.array(self.G, dtype=float).reshape(3, 3)
        j1.setflags(write=False)
        G.setflags(write=False)
        object.__setattr__(self, "j1", j1)
        object.__setattr__(self, "G", G)
        if self.pair_populations is not None:
            pops = np.array(self.pair_populations, dtype=float).reshape(3)
            pops.setflags(write=False)
            object.__setattr__(self, "pair_populations", pops)

    def populations(self):
        """z-basis populations of a qubit pair: (up-up, up-down, down-down).

        Stored values come from sums of non-negative terms and so keep exact
        zeros; the fallback from <J_z>, G_zz is subject to cancellation.
        """
        if self.pair_populations is not None:
            return tuple(float(x) for x in self.pair_populations)
        N = self.n_particles
        jz, jz2 = self.j1[2], self.G[2, 2]
        norm = N * (N - 1.0)
        uu = (jz2 + (N - 1) * jz + N / 2.0 * (N / 2.0 - 1.0)) / norm
        dd = (jz2 - (N - 1) * jz + N / 2.0 * (N / 2.0 - 1.0)) / norm
        ud = (N * N / 4.0 - jz2) / norm
        return uu, ud, dd

    @property
    def gamma(self):
        return self.G - np.outer(self.j1, self.j1)

    @property
    def j_squared(self):
        return float(np.trace(self.G))

    @property
    def jminus2(self):
        """<J_-^2> reconstructed from the moment matrix."""
        G = self.G
        return complex(G[0, 0] - G[1, 1], -2.0 * G[0, 1])

    def rotated(self, rotation):
        """Moments of the rigidly rotated state (J -> R J)."""
        R = np.asarray(rotation, dtype=float)
        return CollectiveMoments(self.n_particles, R @ self.j1, R @ self.G @ R.T)

    def has_parity_symmetry(self, tol=PARITY_TOL):
        """<J_x> = <J_y> = 0 and G_xz = G_yz = 0, i.e. mean spin on the z axis."""
        return not self.parity_violations(tol)

    def parity_violations(self, tol=PARITY_TOL):
        checks = {
            "<J_x> = 0": self.j1[0],
            "<J_y> = 0": self.j1[1],
            "G_xz = 0": self.G[0, 2],
            "G_yz = 0": self.G[1, 2],
        }
        return [f"{name} (got {val:.3e})" for name, val in checks.items() if abs(val) > tol]


def moments(state):
    """Collective moments of a normalized symmetric state using O(N) ladder actions."""
    if not isinstance(state, SymmetricState):
        raise PreconditionError("moments() expects a SymmetricState")
    N, c = state.n_particles, state.amplitudes
    norm2 = float(np.vdot(c, c).real)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise PreconditionError(f"state is not normalized (sum |c|^2 = {norm2!r})")

    jp = _jplus(N, c)
    jm = _jminus(N, c)
    images = ((jp + jm) / 2.0, (jp - jm) / 2.0j, apply_jz(state))

    j1 = np.empty(3)
    G = np.empty((3, 3))
    for k in range(3):
        j1[k] = np.vdot(c, images[k]).real
        for l in range(k, 3):
            G[k, l] = G[l, k] = np.vdot(images[k], images[l]).real
    return CollectiveMoments(N, j1, G, pair_populations(N, np.abs(c) ** 2))


def pair_populations(N, probs):
    """Pair populations from excitation-number probabilities P(n), n = 0..N."""
    n = np.arange(N + 1, dtype=float)
    norm = N * (N - 1.0)
    return (
        float(np.dot(probs, n * (n - 1.0))) / norm,
        float(np.dot(probs, n * (N - n))) / norm,
        float(np.dot(probs, (N - n) * (N - n - 1.0))) / norm,
    )


def mean_spin_direction(m, tol=DEGENERATE_SPIN):
    """Unit vector along <J>, or ``None`` when |<J>| < tol."""
    norm = float(np.linalg.norm(m.j1))
    if norm < tol:
        return None
    return m.j1 / norm


def load_state_file(path):
    """Read ``{"N": int, "amplitudes": [[re, im], ...]}``.

    Near-normalized input (within 1e-6) is renormalized; anything further off
    is rejected.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read state file {path}: {exc}") from exc
    try:
        N = data["N"]
        raw = data["amplitudes"]
        amps = np.array([complex(float(re), float(im)) for re, im in raw])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed state file {path}: {exc}") from exc
    if not isinstance(N, int) or isinstance(N, bool):
        raise ParameterError(f"N must be an integer, got {N!r}")
    if amps.size != N + 1:
        raise ParameterError(f"N={N} needs {N + 1} amplitudes, file has {amps.size}")
    norm2 = float(np.vdot(amps, amps).real)
    if abs(norm2 - 1.0) > FILE_NORM_TOL:
        raise ParameterError(f"amplitudes are not normalized (sum |c|^2 = {norm2:.9g})")
    return SymmetricState(N, amps / math.sqrt(norm2))


def dump_state(state):
    return {
        "N": state.n_particles,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }
