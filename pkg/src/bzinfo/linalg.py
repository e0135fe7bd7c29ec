"""Dense complex matrix helpers and Hermitian spectral analysis.

Everything here targets small dimensions (d up to a few dozen), so plain
dense double-precision algorithms are used throughout.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NumericalError

TOL_HERM = 1e-12
IMAG_TOL = 1e-10


def _as_matrix(obj) -> np.ndarray:
    """Accept a bare array or anything carrying a ``.matrix`` attribute."""
    return np.asarray(getattr(obj, "matrix", obj), dtype=np.complex128)


def as_complex_matrix(m) -> np.ndarray:
    """Validate a square complex matrix with finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise DomainError("matrix has non-finite entries")
    return a


def hermiticity_defect(m) -> float:
    """Max entrywise distance from the conjugate transpose."""
    a = _as_matrix(m)
    return float(np.abs(a - a.conj().T).max())


def hermitian(m, tol: float = TOL_HERM) -> np.ndarray:
    """Validate and symmetrize a Hermitian matrix.

    Defects below ``tol`` are absorbed by H <- (H + H^dag)/2; larger
    defects raise, so genuine errors are not masked.
    """
    a = as_complex_matrix(m)
    defect = float(np.abs(a - a.conj().T).max())
    if defect >= tol:
        raise DomainError(f"matrix is not Hermitian (defect {defect:.3e} >= {tol:.0e})")
    return (a + a.conj().T) / 2.0


def herm_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector matrix with eigenvectors
    in columns).  Satisfies H v_k = w_k v_k to 1e-10 * max(1, |H|_max).
    """
    a = hermitian(_as_matrix(h))
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Hermitian eigensolver failed to converge: {exc}") from exc
    return w, v


def expectation(x, rho) -> float:
    """<X>_rho = Tr(rho X), checked to be real to 1e-10."""
    a = _as_matrix(x)
    r = _as_matrix(rho)
    if a.shape != r.shape:
        raise DomainError(f"dimension mismatch: {a.shape} vs {r.shape}")
    tr = np.einsum("ij,ji->", r, a)
    if abs(tr.imag) >= IMAG_TOL:
        raise NumericalError(f"expectation value has imaginary part {tr.imag:.3e}")
    return float(tr.real)


def purity(rho) -> float:
    """Tr(rho^2), in [1/d, 1] for a valid state."""
    r = _as_matrix(rho)
    return float(np.einsum("ij,ji->", r, r).real)
