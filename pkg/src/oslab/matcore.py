"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Everything
returned from this module is a fresh, read-only array so values can be
shared between threads and cached without defensive copies.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput

__all__ = [
    "SVDResult",
    "as_matrix",
    "banach_adjoint",
    "ginibre",
    "haar_unitary",
    "kron",
    "matrix_from_json",
    "matrix_to_json",
    "schatten_norm",
    "spectral_norm",
    "svd",
    "transpose_map",
]

RECONSTRUCTION_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate ``m`` as a finite, nonempty 2-d complex matrix.

    Returns a read-only ``complex128`` copy.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2:
        raise InvalidInput(f"{name} must be 2-dimensional, got shape {a.shape}")
    if a.size == 0:
        raise InvalidInput(f"{name} has a zero dimension: shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} has non-finite entries")
    return _frozen(a)


@dataclass(frozen=True)
class SVDResult:
    singular_values: np.ndarray
    left_factors: np.ndarray
    right_factors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left_factors * self.singular_values) @ self.right_factors.conj().T


def svd(m) -> SVDResult:
    """Thin SVD ``m = U diag(s) V*`` with ``s`` nonincreasing.

    LAPACK's divide-and-conquer driver is used; the reconstruction bound
    ``||m - U S V*||_F <= 1e-10 max(1, ||m||_F)`` is checked on every call.
    """
    a = as_matrix(m)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    res = SVDResult(_frozen(s), _frozen(u), _frozen(vh.conj().T))
    err = np.linalg.norm(a - res.reconstruct())
    if err > RECONSTRUCTION_TOL * max(1.0, np.linalg.norm(a)):
        # gesdd occasionally loses accuracy on pathological inputs; gesvd is slower but robust
        import scipy.linalg

        u, s, vh = scipy.linalg.svd(a, full_matrices=False, lapack_driver="gesvd")
        res = SVDResult(_frozen(s), _frozen(u), _frozen(vh.conj().T))
    return res


def spectral_norm(m) -> float:
    a = np.asarray(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def schatten_norm(m, p) -> float:
    """Schatten ``p``-norm for ``p`` in ``{1, 2, inf}``."""
    a = as_matrix(m)
    if p == 2:
        return float(np.linalg.norm(a))
    s = np.linalg.svd(a, compute_uv=False)
    if p == 1:
        return float(s.sum())
    if p == np.inf or p == "inf" or p == "infinity":
        return float(s[0])
    raise InvalidInput(f"unsupported Schatten exponent {p!r}; use 1, 2 or inf")


def kron(a, b) -> np.ndarray:
    """Kronecker product; row index of ``a`` is the slow one (``e_i ⊗ f_k -> i*dim_b + k``)."""
    return _frozen(np.kron(as_matrix(a, "a"), as_matrix(b, "b")))


def transpose_map(b) -> np.ndarray:
    """Entrywise transpose ``b^T(xi) = conj(b* conj(xi))``; no conjugation of entries."""
    return _frozen(as_matrix(b).T.copy())


def banach_adjoint(b) -> np.ndarray:
    """Banach-space adjoint ``b^# : F* -> F*`` written in the dual basis.

    With ``F = C^d`` and ``F*`` carrying the dual basis of the standard one,
    ``b^#(phi) = phi o b`` has matrix ``b^T``; this is the realization used
    when the twisted spatial norm is rewritten as an elementary-operator norm.
    """
    a = as_matrix(b)
    if a.shape[0] != a.shape[1]:
        raise InvalidInput(f"banach_adjoint expects a square matrix, got {a.shape}")
    return _frozen(a.T.copy())


def ginibre(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    """Complex Ginibre matrix: i.i.d. standard complex Gaussian entries (E|z|^2 = 1)."""
    cols = rows if cols is None else cols
    z = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return z / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def matrix_to_json(m) -> list:
    a = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def matrix_from_json(rows, name: str = "matrix") -> np.ndarray:
    try:
        a = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{name}: expected nested rows of [re, im] pairs ({exc})") from None
    return as_matrix(a, name)
