"""Two-component Dicke superpositions cos(t)|n> + e^{i p} sin(t)|n + n'>."""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from spinsq.dicke import SymmetricState, load_state_file
from spinsq.errors import ParameterError

KINDS = ("even-pair", "adjacent-pair", "general-pair", "single-dicke", "custom-file")

_FIXED_OFFSET = {"even-pair": 2, "adjacent-pair": 1, "single-dicke": 0}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    N: int = 2
    n: int = 0
    n_prime: Optional[int] = None
    theta: float = 0.0
    phi: float = 0.0
    path: Optional[str] = None

    @property
    def offset(self):
        """Excitation gap n' between the two superposed Dicke states."""
        if self.kind == "general-pair":
            return self.n_prime
        return _FIXED_OFFSET.get(self.kind)

    def validate(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown family {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.kind == "custom-file":
            if not self.path:
                raise ParameterError("custom-file family needs a state file path")
            return
        if not isinstance(self.N, (int, np.integer)) or self.N < 2:
            raise ParameterError(f"N must be an integer >= 2, got {self.N!r}")
        if self.kind == "general-pair":
            if self.n_prime is None or self.n_prime < 3:
                raise ParameterError(f"general-pair needs n_prime >= 3, got {self.n_prime!r}")
        elif self.n_prime not in (None, self.offset):
            raise ParameterError(f"{self.kind} fixes n_prime = {self.offset}, got {self.n_prime}")
        if not 0 <= self.n <= self.N - self.offset:
            raise ParameterError(
                f"n = {self.n} outside 0..{self.N - self.offset} for {self.kind} with N = {self.N}"
            )
        if not 0.0 <= self.theta < math.pi:
            raise ParameterError(f"theta = {self.theta!r} outside [0, pi)")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ParameterError(f"phi = {self.phi!r} outside [0, 2 pi)")

    def with_angles(self, theta, phi=None):
        return FamilySpec(
            self.kind, self.N, self.n, self.n_prime, theta, self.phi if phi is None else phi, self.path
        )

    def to_dict(self):
        return {
            "kind": self.kind,
            "N": self.N,
            "n": self.n,
            "n_prime": self.offset if self.kind != "custom-file" else None,
            "theta": self.theta,
            "phi": self.phi,
        }


def build(spec):
    spec.validate()
    if spec.kind == "custom-file":
        return load_state_file(spec.path)
    amps = np.zeros(spec.N + 1, dtype=complex)
    if spec.kind == "single-dicke":
        amps[spec.n] = 1.0
    else:
        amps[spec.n] = math.cos(spec.theta)
        amps[spec.n + spec.offset] = cmath.exp(1j * spec.phi) * math.sin(spec.theta)
    return SymmetricState(spec.N, amps)


def mu(N, n):
    """(n+1)(n+2)(N-n)(N-n-1): squared matrix element of J_-^2 between |n+2> and |n>."""
    return (n + 1) * (n + 2) * (N - n) * (N - n - 1)


def closed_form_moments(spec):
    """(<J_z>, <J_z^2>, <J_-^2>) of an even-pair state in closed form.

    <J_z^2> = m^2 + (4m + 4) sin^2(theta) with m = n - N/2, which is what the
    two-term expansion m^2 cos^2 + (m+2)^2 sin^2 gives.
    """
    if spec.kind != "even-pair":
        raise ParameterError(f"closed forms exist for even-pair only, got {spec.kind}")
    spec.validate()
    m = spec.n - spec.N / 2.0
    s2 = math.sin(spec.theta) ** 2
    jz = m + 2.0 * s2
    jz2 = m * m + (4.0 * m + 4.0) * s2
    jm2 = 0.5 * cmath.exp(1j * spec.phi) * math.sin(2.0 * spec.theta) * math.sqrt(mu(spec.N, spec.n))
    return jz, jz2, jm2


def printed_jz2(spec):
    """The variant m^2 + (4m + 1) sin^2(theta) seen in print; kept only to document the mismatch."""
    m = spec.n - spec.N / 2.0
    return m * m + (4.0 * m + 1.0) * math.sin(spec.theta) ** 2


def theta_grid(steps):
    """Left-inclusive uniform grid on [0, pi)."""
    if steps < 1:
        raise ParameterError("theta grid needs at least one point")
    return [math.pi * k / steps for k in range(steps)]


def phi_grid(steps):
    if steps < 1:
        raise ParameterError("phi grid needs at least one point")
    return [2.0 * math.pi * k / steps for k in range(steps)]


def family_specs(kind, N, n_prime=None):
    """All valid lower excitation numbers for a family at fixed N, as angle-free templates."""
    probe = FamilySpec(kind, N, 0, n_prime)
    off = probe.offset
    if off is None or N - off < 0:
        return []
    return [FamilySpec(kind, N, n, n_prime) for n in range(N - off + 1)]
