"""Dense 2x2 / 4x4 complex matrix algebra and entropies.

Ordering convention: the computational basis is |00>, |01>, |10>, |11> with the
system S as the left tensor factor and the memory Q as the right one.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InvalidArgumentError

ALLOWED_DIMS = (2, 4)
HERMITIAN_TOL = 1e-8
JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
CLAMP_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SX, SY, SZ)

SYSTEM = "system"
MEMORY = "memory"


def as_cmatrix(m, dims=ALLOWED_DIMS) -> np.ndarray:
    """Coerce `m` to a finite complex square matrix of an allowed dimension."""
    if isinstance(m, DensityMatrix):
        return m.mat
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in dims:
        raise InvalidArgumentError(f"expected a square matrix of dimension {dims}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("matrix has non-finite entries")
    return arr


def _check_target(target: str) -> None:
    if target not in (SYSTEM, MEMORY):
        raise InvalidArgumentError(f"target must be '{SYSTEM}' or '{MEMORY}', got {target!r}")


def tensor(a, b) -> np.ndarray:
    """Kronecker product a (x) b of two qubit operators; `a` acts on S, `b` on Q."""
    a = as_cmatrix(a, dims=(2,))
    b = as_cmatrix(b, dims=(2,))
    return np.kron(a, b)


def _jacobi_eigvals(rows: list[list[complex]]) -> list[float]:
    # Cyclic complex Jacobi. Each rotation U = D P first rotates the phase of a_pq
    # away (D = diag(.., e^{-i phi} at q)), then applies a real Givens rotation P.
    n = len(rows)
    a = [list(r) for r in rows]
    scale = math.sqrt(sum(abs(x) ** 2 for r in a for x in r))
    tol = JACOBI_OFF_TOL * max(1.0, scale)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                e = apq / r
                ec = e.conjugate()
                theta = (a[q][q].real - a[p][p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # columns: A <- A U
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = akp * c - akq * s * ec
                    a[k][q] = akp * s + akq * c * ec
                # rows: A <- U^H A
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * e * aqk
                    a[q][k] = s * apk + c * e * aqk
                a[p][q] = a[q][p] = 0j
                a[p][p] = complex(a[p][p].real, 0.0)
                a[q][q] = complex(a[q][q].real, 0.0)
    return sorted(a[i][i].real for i in range(n))


def herm_eigvals(m) -> list[float]:
    """Ascending eigenvalues of a (numerically) Hermitian 2x2 or 4x4 matrix.

    The matrix is symmetrized as (M + M^H)/2 before diagonalization; inputs whose
    anti-Hermitian part exceeds ``HERMITIAN_TOL`` are rejected.
    """
    arr = as_cmatrix(m)
    skew = float(np.max(np.abs(arr - arr.conj().T)))
    if skew > HERMITIAN_TOL:
        raise InvalidArgumentError(f"matrix is not Hermitian (max deviation {skew:.3e})")
    herm = 0.5 * (arr + arr.conj().T)
    return _jacobi_eigvals(herm.tolist())


class DensityMatrix:
    """Validated quantum state: Hermitian, unit trace and positive semidefinite.

    The matrix is stored read-only; its spectrum is computed once at construction.
    """

    __slots__ = ("mat", "tol", "eigvals")

    def __init__(self, mat, tol: float = 1e-9):
        arr = np.array(as_cmatrix(mat), dtype=complex)
        herm_dev = float(np.max(np.abs(arr - arr.conj().T)))
        if herm_dev > tol:
            raise InvalidArgumentError(f"state is not Hermitian (max deviation {herm_dev:.3e})")
        tr = np.trace(arr)
        if abs(tr - 1.0) > tol:
            raise InvalidArgumentError(f"state trace is {tr.real:.12g}, expected 1")
        vals = _jacobi_eigvals((0.5 * (arr + arr.conj().T)).tolist())
        if vals[0] < -tol:
            raise InvalidArgumentError(f"state is not positive semidefinite (min eigenvalue {vals[0]:.3e})")
        arr.setflags(write=False)
        self.mat = arr
        self.tol = tol
        self.eigvals = tuple(vals)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def from_ket(cls, ket, tol: float = 1e-9) -> "DensityMatrix":
        psi = np.asarray(ket, dtype=complex).reshape(-1)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), tol=tol)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, eigvals={self.eigvals})"


def singlet_ket() -> np.ndarray:
    """(|10> - |01>)/sqrt(2), the initial system-memory state."""
    ket = np.zeros(4, dtype=complex)
    ket[2] = 1.0
    ket[1] = -1.0
    return ket / math.sqrt(2.0)


def singlet() -> DensityMatrix:
    return DensityMatrix.from_ket(singlet_ket())


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Reduced state of the kept qubit of a two-qubit state."""
    _check_target(keep)
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if rho.dim != 4:
        raise InvalidArgumentError("partial_trace expects a 4x4 state")
    t = rho.mat.reshape(2, 2, 2, 2)
    if keep == SYSTEM:
        red = np.einsum("iaja->ij", t)
    else:
        red = np.einsum("aiaj->ij", t)
    return DensityMatrix(red, tol=rho.tol)


def entropy_from_eigvals(vals, tol: float = CLAMP_TOL) -> float:
    """Shannon entropy in bits of a spectrum, clamping round-off negatives to zero."""
    h = 0.0
    for lam in vals:
        if lam < -tol:
            raise InvalidArgumentError(f"negative eigenvalue {lam:.3e} below clamp tolerance")
        if lam > 0.0:
            h -= lam * math.log2(lam)
    return h


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-tr(rho log2 rho), in bits."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    h = entropy_from_eigvals(rho.eigvals)
    return min(max(h, 0.0), math.log2(rho.dim))
