"""Dense eigen-kernels for the tiny matrices used here (2x2 up to 8x8).

Everything is a pure function of numpy arrays; inputs are never modified.
"""

import math

import numpy as np

from spinsq.errors import NumericalError, PreconditionError

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
MAX_DIM = 8

PSD_CLAMP = 1e-10
PSD_FAIL = 1e-8

# 1 - r^2 below this sends the trigonometric cubic solver to Jacobi
_CARDANO_DEGENERATE = 1e-6


def _scale(m):
    return max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0


def check_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise PreconditionError("matrix has non-finite entries")
    asym = float(np.max(np.abs(m - m.conj().T)))
    if asym > tol * _scale(m):
        raise PreconditionError(f"matrix is not Hermitian (max |M - M^H| = {asym:.3e})")


def herm_eig(m, check=True):
    """Eigendecomposition of a small Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with ``w`` real and ascending and the columns of ``v``
    the matching orthonormal eigenvectors, so ``m @ v == v * w``.
    """
    m = np.asarray(m)
    if check:
        check_hermitian(m)
    dim = m.shape[0]
    if dim > MAX_DIM:
        raise PreconditionError(f"dimension {dim} exceeds kernel limit {MAX_DIM}")

    # plain Python scalars: at these sizes numpy call overhead dominates
    a = [[0.5 * (complex(m[i, j]) + complex(m[j, i]).conjugate()) for j in range(dim)] for i in range(dim)]
    v = [[1.0 + 0j if i == j else 0j for j in range(dim)] for i in range(dim)]
    tol = JACOBI_TOL * _scale(np.asarray(m))
    tol2 = tol * tol

    for _ in range(JACOBI_MAX_SWEEPS):
        off2 = sum(abs(a[i][j]) ** 2 for i in range(dim) for j in range(dim) if i != j)
        if off2 < tol2:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = a[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                ph = (apq / r).conjugate()  # e^{-i alpha}
                theta = (a[q][q].real - a[p][p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # columns: A <- A J with J = [[c, s], [-s ph, c ph]] on (p, q)
                sph, cph = s * ph, c * ph
                for row in a:
                    x, y = row[p], row[q]
                    row[p] = c * x - sph * y
                    row[q] = s * x + cph * y
                for row in v:
                    x, y = row[p], row[q]
                    row[p] = c * x - sph * y
                    row[q] = s * x + cph * y
                # rows: A <- J^H A
                rp, rq = a[p], a[q]
                sphc, cphc = sph.conjugate(), cph.conjugate()
                for k in range(dim):
                    x, y = rp[k], rq[k]
                    rp[k] = c * x - sphc * y
                    rq[k] = s * x + cphc * y
                rp[q] = rq[p] = 0j
                rp[p] = complex(rp[p].real)
                rq[q] = complex(rq[q].real)
    else:
        raise NumericalError(f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    w = np.array([a[i][i].real for i in range(dim)])
    order = np.argsort(w, kind="stable")
    return w[order], np.array(v, dtype=complex)[:, order]


def sym3_eig_min(m):
    """Smallest eigenvalue of a real symmetric 3x3 matrix.

    Uses the trigonometric solution of the characteristic cubic and drops to
    Jacobi when two eigenvalues nearly coincide, where ``acos`` loses digits.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise PreconditionError(f"expected a 3x3 matrix, got shape {m.shape}")
    check_hermitian(m)

    p1 = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    if p1 == 0.0:
        return float(min(m[0, 0], m[1, 1], m[2, 2]))

    q = (m[0, 0] + m[1, 1] + m[2, 2]) / 3.0
    p2 = (m[0, 0] - q) ** 2 + (m[1, 1] - q) ** 2 + (m[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (m - q * np.eye(3)) / p
    r = float(np.linalg.det(b)) / 2.0
    if 1.0 - r * r < _CARDANO_DEGENERATE:
        return float(herm_eig(m, check=False)[0][0])
    phi = math.acos(r) / 3.0
    return float(q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0))


def psd_sqrt(m):
    """Principal square root of a Hermitian positive semidefinite matrix."""
    w, v = herm_eig(m)
    if w[0] < -PSD_FAIL * _scale(np.asarray(m)):
        raise NumericalError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def singular_values(b):
    """Singular values of a small square matrix, descending.

    One-sided (Hestenes) Jacobi: column pairs are rotated until mutually
    orthogonal and the column norms are the singular values. Unlike taking
    square roots of eigenvalues of B^H B, tiny singular values stay accurate
    to machine epsilon.
    """
    b = np.asarray(b, dtype=complex)
    n = b.shape[0]
    if b.shape != (n, n) or n > MAX_DIM:
        raise PreconditionError(f"unsupported shape {b.shape} for singular values")
    cols = [[complex(b[i, j]) for i in range(n)] for j in range(n)]
    # columns this small relative to B are rounding noise and cannot be
    # orthogonalized any further
    floor2 = (4.0 * np.finfo(float).eps * float(np.linalg.norm(b))) ** 2

    for _ in range(JACOBI_MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                cp, cq = cols[p], cols[q]
                alpha = sum(x.real * x.real + x.imag * x.imag for x in cp)
                beta = sum(x.real * x.real + x.imag * x.imag for x in cq)
                gam = sum(x.conjugate() * y for x, y in zip(cp, cq))
                r = abs(gam)
                if r == 0.0 or r <= 1e-15 * math.sqrt(alpha * beta) or min(alpha, beta) <= floor2:
                    continue
                rotated = True
                ph = (gam / r).conjugate()
                theta = (beta - alpha) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sph, cph = s * ph, c * ph
                cols[p] = [c * x - sph * y for x, y in zip(cp, cq)]
                cols[q] = [s * x + cph * y for x, y in zip(cp, cq)]
        if not rotated:
            break
    else:
        raise NumericalError(f"one-sided Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    sv = sorted((math.sqrt(sum(abs(x) ** 2 for x in col)) for col in cols), reverse=True)
    return np.array(sv)
