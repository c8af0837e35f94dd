"""Brute-force cross-check in the full 2^N product space.

Bit k of a basis index is qubit k, with bit value 1 meaning spin up.
Eigenproblems here go through ``numpy.linalg`` on purpose, so the checks do
not share numerics with the Jacobi kernel.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from spinsq.dicke import CollectiveMoments, SymmetricState, pair_populations
from spinsq.errors import ParameterError, ResourceLimitError, VerificationError
from spinsq.pairwise import (
    SIGMA_YY,
    reduced_density,
    wootters_margin,
    xstate_margin,
    xstate_params,
)
from spinsq.squeezing import xi_t

DEFAULT_MAX_N = 14
TOLERANCE = 1e-9


@dataclass(frozen=True)
class FullStateVector:
    n_particles: int
    amplitudes: np.ndarray


@lru_cache(maxsize=None)
def _bit_tables(N):
    """Per-qubit flip targets, +-1 sign tables and Hamming weights for 2^N indices."""
    idx = np.arange(2**N)
    bits = np.array([(idx >> k) & 1 for k in range(N)])
    flips = idx[None, :] ^ (1 << np.arange(N))[:, None]
    # +1 where qubit k is down
    sign = 1 - 2 * bits
    return flips, sign, bits.sum(axis=0)


def expand(state: SymmetricState, max_n=DEFAULT_MAX_N) -> FullStateVector:
    N = state.n_particles
    if N > max_n:
        raise ResourceLimitError(f"N = {N} exceeds the brute-force ceiling {max_n}")
    _, _, weight = _bit_tables(N)
    norms = np.array([math.sqrt(math.comb(N, n)) for n in range(N + 1)])
    amps = state.amplitudes[weight] / norms[weight]
    return FullStateVector(N, amps)


def _collective_images(v: FullStateVector):
    """J_x psi, J_y psi, J_z psi as sums of single-qubit Pauli actions."""
    psi = v.amplitudes
    flips, sign, _ = _bit_tables(v.n_particles)
    flipped = psi[flips]
    jx = flipped.sum(axis=0)
    # sigma_y|down> = -i|up>, sigma_y|up> = i|down>
    jy = 1j * (sign * flipped).sum(axis=0)
    jz = -sign.sum(axis=0) * psi
    return jx / 2.0, jy / 2.0, jz / 2.0


def oracle_moments(v: FullStateVector) -> CollectiveMoments:
    psi = v.amplitudes
    images = _collective_images(v)
    j1 = [np.vdot(psi, im).real for im in images]
    G = [[np.vdot(a, b).real for b in images] for a in images]
    _, _, weight = _bit_tables(v.n_particles)
    probs = np.bincount(weight, weights=np.abs(psi) ** 2, minlength=v.n_particles + 1)
    return CollectiveMoments(v.n_particles, j1, G, pair_populations(v.n_particles, probs))


def partial_trace_pair(v: FullStateVector, qubits=(0, 1)) -> np.ndarray:
    """Reduced density matrix of qubits (i, j) in the {|00>,...,|11>} basis, |0> = up."""
    N = v.n_particles
    i, j = qubits
    if i == j or not (0 <= i < N and 0 <= j < N):
        raise ParameterError(f"need two distinct qubits in 0..{N - 1}, got {qubits}")
    psi = v.amplitudes.reshape((2,) * N)
    # C-order reshape puts qubit k on axis N-1-k
    psi = np.moveaxis(psi, (N - 1 - i, N - 1 - j), (0, 1))
    psi = psi[::-1, ::-1].reshape(4, -1)
    return psi @ psi.conj().T


def oracle_concurrence_margin(rho) -> float:
    """Wootters margin from a pure-state decomposition of rho and numpy's SVD."""
    w, u = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    vecs = u * np.sqrt(w)
    tau = vecs.T @ SIGMA_YY @ vecs
    lam = np.linalg.svd(tau, compute_uv=False)
    return float(lam[0] - lam[1] - lam[2] - lam[3])


def _oracle_squeezing(m: CollectiveMoments):
    N = m.n_particles
    gamma = m.gamma
    lam_min = float(np.linalg.eigvalsh((N - 1) * gamma + m.G)[0])
    xi_t2 = lam_min / (np.trace(m.G) - N / 2.0)
    norm = np.linalg.norm(m.j1)
    parity = max(abs(m.j1[0]), abs(m.j1[1]), abs(m.G[0, 2]), abs(m.G[1, 2])) <= 1e-9
    if parity:
        axis = np.array([0.0, 0.0, 1.0])
        xs = 4.0 * np.linalg.eigvalsh(gamma[:2, :2])[0] / N
    elif norm < 1e-9:
        axis = np.array([0.0, 0.0, 1.0])
        xs = 4.0 * np.linalg.eigvalsh(gamma)[0] / N
    else:
        axis = m.j1 / norm
        # any orthonormal completion works; the minimum is basis independent
        q, _ = np.linalg.qr(np.column_stack([axis, np.eye(3)]))
        plane = q[:, 1:3]
        xs = 4.0 * np.linalg.eigvalsh(plane.T @ gamma @ plane)[0] / N
    vs = 4.0 / N**2 * (N * (axis @ gamma @ axis) + (axis @ m.j1) ** 2)
    return {"xi_s2": float(xs), "varsigma2": float(vs), "xi_t2": float(xi_t2), "lambda_min": lam_min}


@dataclass(frozen=True)
class OracleReport:
    moments: CollectiveMoments
    rho: np.ndarray
    squeezing: dict
    concurrence_margin: float

    @property
    def concurrence(self):
        return max(0.0, self.concurrence_margin)


def oracle_report(state: SymmetricState, max_n=DEFAULT_MAX_N) -> OracleReport:
    v = expand(state, max_n)
    m = oracle_moments(v)
    rho = partial_trace_pair(v, (0, 1))
    return OracleReport(m, rho, _oracle_squeezing(m), oracle_concurrence_margin(rho))


def deviations(state: SymmetricState, moments_primary, max_n=DEFAULT_MAX_N):
    """Largest absolute primary-vs-oracle difference for each named quantity."""
    ref = oracle_report(state, max_n)
    m = moments_primary
    rep = xi_t(m)
    rho = reduced_density(m)
    if m.has_parity_symmetry():
        margin = xstate_margin(xstate_params(m))
    else:
        margin = wootters_margin(rho)
    out = {
        "j1": float(np.max(np.abs(m.j1 - ref.moments.j1))),
        "G": float(np.max(np.abs(m.G - ref.moments.G))),
        "rho": float(np.max(np.abs(rho - ref.rho))),
        "concurrence": abs(max(0.0, margin) - ref.concurrence),
    }
    for key in ("xi_s2", "varsigma2", "xi_t2", "lambda_min"):
        out[key] = abs(getattr(rep, key) - ref.squeezing[key])
    return out


def cross_check(state: SymmetricState, moments_primary, tol=TOLERANCE, max_n=DEFAULT_MAX_N):
    devs = deviations(state, moments_primary, max_n)
    for name, dev in devs.items():
        if not dev <= tol:
            raise VerificationError(name, dev, tol, f"N={state.n_particles}")
    return devs
