"""Two-qubit reduced state of a symmetric ensemble and its concurrence.

Two-qubit matrices use the basis {|00>, |01>, |10>, |11>} with |0> the
spin-up (sigma_z = +1) state, so the ensemble ground state reduces to
|11><11|.
"""

import math
from dataclasses import dataclass

import numpy as np

from spinsq import smallmat
from spinsq.dicke import CollectiveMoments
from spinsq.errors import NumericalError, ParameterError, PreconditionError
from spinsq.squeezing import THRESHOLD_BAND

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_I2 = np.eye(2, dtype=complex)
SIGMA_YY = np.kron(PAULI[1], PAULI[1])
_SWAP = np.eye(4)[[0, 2, 1, 3]]
# sigma_k x 1 + 1 x sigma_k, and sigma_k x sigma_l
_SINGLE_BASIS = np.array([np.kron(s, _I2) + np.kron(_I2, s) for s in PAULI])
_PAIR_BASIS = np.array([[np.kron(s, t) for t in PAULI] for s in PAULI])

RADICAND_CLAMP = 1e-12
DENSITY_TOL = 1e-12


@dataclass(frozen=True)
class LocalExpectations:
    """<sigma_1a> and the (symmetric) matrix <sigma_1a sigma_2b>."""

    single: np.ndarray
    pair: np.ndarray


def local_expectations(m: CollectiveMoments) -> LocalExpectations:
    N = m.n_particles
    if N < 2:
        raise ParameterError("pair correlations need N >= 2")
    single = 2.0 * m.j1 / N
    pair = (4.0 * m.G - N * np.eye(3)) / (N * (N - 1))
    return LocalExpectations(single, pair)


def czz(m: CollectiveMoments) -> float:
    """Connected z-z correlation <s1z s2z> - <s1z>^2."""
    loc = local_expectations(m)
    return float(loc.pair[2, 2] - loc.single[2] ** 2)


def reduced_density(m: CollectiveMoments) -> np.ndarray:
    """4x4 reduced density matrix of any two particles."""
    loc = local_expectations(m)
    rho = (
        np.eye(4)
        + np.tensordot(loc.single, _SINGLE_BASIS, axes=1)
        + np.tensordot(loc.pair, _PAIR_BASIS, axes=2)
    ) / 4.0
    # exchange symmetry and the z populations are imposed exactly: an
    # O(1e-17) error along a null direction moves the concurrence by O(1e-9)
    rho = 0.5 * (rho + _SWAP @ rho @ _SWAP)
    uu, ud, dd = m.populations()
    rho[0, 0], rho[3, 3] = uu, dd
    rho[1, 1] = rho[2, 2] = rho[1, 2] = rho[2, 1] = ud
    w, _ = smallmat.herm_eig(rho)
    if w[0] < -smallmat.PSD_FAIL:
        raise NumericalError(f"reduced density matrix has eigenvalue {w[0]:.3e}; moments inconsistent")
    return rho


def check_density(rho, tol=DENSITY_TOL):
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise PreconditionError(f"two-qubit density matrix must be 4x4, got {rho.shape}")
    smallmat.check_hermitian(rho, tol)
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise PreconditionError(f"trace is {tr!r}, expected 1")


@dataclass(frozen=True)
class XStateParams:
    v_plus: float
    v_minus: float
    u: complex
    y: float

    @property
    def sqrt_vv(self):
        return _clamped_sqrt(self.v_plus * self.v_minus)

    def to_dict(self):
        return {
            "v_plus": self.v_plus,
            "v_minus": self.v_minus,
            "u": [self.u.real, self.u.imag],
            "y": self.y,
        }


def _clamped_sqrt(x):
    if x < 0.0:
        if x < -RADICAND_CLAMP:
            raise NumericalError(f"negative radicand {x:.3e}")
        return 0.0
    return math.sqrt(x)


def xstate_params(m: CollectiveMoments) -> XStateParams:
    bad = m.parity_violations()
    if bad:
        raise PreconditionError("parity conditions violated: " + "; ".join(bad))
    N = m.n_particles
    # v+- = (1 +- 2<s1z> + <s1z s2z>)/4 and y = (1 - <s1z s2z>)/4 are the pair
    # populations, taken in cancellation-free form
    uu, ud, dd = m.populations()
    return XStateParams(v_plus=uu, v_minus=dd, u=m.jminus2 / (N * (N - 1)), y=ud)


def xstate_margin(p: XStateParams) -> float:
    """2 max{|u| - y, y - sqrt(v+ v-)}: positive exactly when the pair is entangled."""
    return 2.0 * max(abs(p.u) - p.y, p.y - p.sqrt_vv)


def concurrence_x(p: XStateParams) -> float:
    return max(0.0, xstate_margin(p))


def wootters_lambdas(rho) -> np.ndarray:
    """Descending square roots of the eigenvalues of rho * rho_tilde.

    They are the singular values of sqrt(rho) (sy sy) sqrt(rho)^*, whose
    Gram matrix is the Hermitian sqrt(rho) rho_tilde sqrt(rho).
    """
    check_density(rho)
    s = smallmat.psd_sqrt(rho)
    return smallmat.singular_values(s @ SIGMA_YY @ s.conj())


def wootters_margin(rho) -> float:
    lam = wootters_lambdas(rho)
    return float(lam[0] - lam[1] - lam[2] - lam[3])


def concurrence_general(rho) -> float:
    return max(0.0, wootters_margin(rho))


def entanglement_margin(m: CollectiveMoments) -> float:
    """Unclamped concurrence: X-state closed form on parity states, Wootters otherwise."""
    if m.has_parity_symmetry():
        return xstate_margin(xstate_params(m))
    return wootters_margin(reduced_density(m))


def concurrence(m: CollectiveMoments) -> float:
    return max(0.0, entanglement_margin(m))


def classify_entangled(margin, band=THRESHOLD_BAND):
    if margin > band:
        return "yes"
    if margin < -band:
        return "no"
    return "boundary"
