"""Small dense complex-matrix helpers.

Everything here operates on ``numpy`` arrays of dtype ``complex128``. The
matrices in this package are at most 16x16, so nothing is sparse and nothing
is cached.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10


class DimensionError(ValueError):
    """Raised when matrix dimensions do not conform for an operation."""


def as_cmatrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf")
    return m


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is ``a[i, j] * b``."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def adjoint(a) -> np.ndarray:
    return as_cmatrix(a).conj().T


def matmul(a, b) -> np.ndarray:
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def trace(a) -> complex:
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"trace of non-square matrix {m.shape}")
    return complex(np.trace(m))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    """True iff max |a - a^dagger| <= tol (entrywise)."""
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def hermitian_eigenvalues(a) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (LAPACK ``heevd``)."""
    m = as_cmatrix(a)
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(m)


def is_psd(a, tol: float = PSD_TOL) -> bool:
    """True iff ``a`` is Hermitian with every eigenvalue >= -tol."""
    m = as_cmatrix(a)
    if not is_hermitian(m):
        return False
    return bool(hermitian_eigenvalues(m)[0] >= -tol)


def check_density_matrix(rho, trace_tol: float = 1e-12, psd_tol: float = 1e-8) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Raises ``ValueError`` naming the first violated property (Hermiticity,
    unit trace, positivity).
    """
    m = as_cmatrix(rho)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"density matrix must be square, got {m.shape}")
    if not is_hermitian(m):
        raise ValueError("density matrix is not Hermitian")
    tr = np.trace(m)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace is {tr}, expected 1")
    lo = hermitian_eigenvalues(m)[0]
    if lo < -psd_tol:
        raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")
    return m
