"""Finite tensors ``w = sum_j a_j ⊗ b_j`` in ``B(E) ⊗ B(F)``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput
from .matcore import as_matrix, ginibre, matrix_from_json, matrix_to_json

__all__ = ["NormBracket", "TensorElement", "random_tensor", "reduce_representation"]

EQUALITY_TOL = 1e-10
INEQUALITY_SLACK = 1e-9


@dataclass(frozen=True)
class TensorElement:
    """An element of ``B(C^dimE) ⊗ B(C^dimF)`` held as a list of pairs.

    The representation is not canonical; compare with :meth:`equals`.
    """

    dimE: int
    dimF: int
    pairs: tuple = field(default=())

    def __post_init__(self):
        if int(self.dimE) < 1 or int(self.dimF) < 1:
            raise InvalidInput(f"dimensions must be positive, got {self.dimE}, {self.dimF}")
        checked = []
        for j, (a, b) in enumerate(self.pairs):
            a = as_matrix(a, f"pairs[{j}].a")
            b = as_matrix(b, f"pairs[{j}].b")
            if a.shape != (self.dimE, self.dimE):
                raise InvalidInput(f"pairs[{j}].a has shape {a.shape}, expected {(self.dimE,) * 2}")
            if b.shape != (self.dimF, self.dimF):
                raise InvalidInput(f"pairs[{j}].b has shape {b.shape}, expected {(self.dimF,) * 2}")
            checked.append((a, b))
        object.__setattr__(self, "pairs", tuple(checked))

    @classmethod
    def from_pairs(cls, pairs, dimE=None, dimF=None) -> "TensorElement":
        pairs = list(pairs)
        if dimE is None or dimF is None:
            if not pairs:
                raise InvalidInput("dimensions are required for an empty pair list")
            dimE = np.shape(pairs[0][0])[0]
            dimF = np.shape(pairs[0][1])[0]
        return cls(int(dimE), int(dimF), tuple(pairs))

    @classmethod
    def zero(cls, dimE: int, dimF: int) -> "TensorElement":
        return cls(dimE, dimF, ())

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def a_stack(self) -> np.ndarray:
        if not self.pairs:
            return np.zeros((0, self.dimE, self.dimE), dtype=complex)
        return np.stack([a for a, _ in self.pairs])

    @property
    def b_stack(self) -> np.ndarray:
        if not self.pairs:
            return np.zeros((0, self.dimF, self.dimF), dtype=complex)
        return np.stack([b for _, b in self.pairs])

    def operator(self) -> np.ndarray:
        """``sum_j kron(a_j, b_j)`` acting on ``E ⊗ F``."""
        n = self.dimE * self.dimF
        if not self.pairs:
            return np.zeros((n, n), dtype=complex)
        op = np.einsum("jab,jcd->acbd", self.a_stack, self.b_stack)
        return op.reshape(n, n)

    def coefficient_matrix(self) -> np.ndarray:
        """``sum_j vec(a_j) vec(b_j)^T``: the ``dimE^2 x dimF^2`` matricization.

        Its rank is the minimal representation length.
        """
        if not self.pairs:
            return np.zeros((self.dimE**2, self.dimF**2), dtype=complex)
        A = self.a_stack.reshape(len(self), -1)
        B = self.b_stack.reshape(len(self), -1)
        return A.T @ B

    def equals(self, other: "TensorElement", tol: float = EQUALITY_TOL) -> bool:
        if (self.dimE, self.dimF) != (other.dimE, other.dimF):
            return False
        diff = self.coefficient_matrix() - other.coefficient_matrix()
        return bool(np.max(np.abs(diff), initial=0.0) <= tol)

    def scaled(self, lam: complex) -> "TensorElement":
        """``lam * w``, scaling the a-side of every pair."""
        return TensorElement(self.dimE, self.dimF, tuple((lam * a, b) for a, b in self.pairs))

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if (self.dimE, self.dimF) != (other.dimE, other.dimF):
            raise InvalidInput("cannot add tensors of different shapes")
        return TensorElement(self.dimE, self.dimF, self.pairs + other.pairs)

    def map_b(self, fn) -> "TensorElement":
        return TensorElement(self.dimE, self.dimF, tuple((a, fn(b)) for a, b in self.pairs))

    def adjoint_pairs(self) -> "TensorElement":
        """``sum_j a_j* ⊗ b_j*``."""
        return TensorElement(
            self.dimE, self.dimF, tuple((a.conj().T, b.conj().T) for a, b in self.pairs)
        )

    def to_json(self) -> dict:
        return {
            "dimE": self.dimE,
            "dimF": self.dimF,
            "pairs": [{"a": matrix_to_json(a), "b": matrix_to_json(b)} for a, b in self.pairs],
        }

    @classmethod
    def from_json(cls, obj, where: str = "tensor") -> "TensorElement":
        if not isinstance(obj, dict):
            raise InvalidInput(f"{where}: expected an object with dimE, dimF, pairs")
        try:
            dimE, dimF, pairs = int(obj["dimE"]), int(obj["dimF"]), obj["pairs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"{where}: missing or malformed field {exc}") from None
        out = []
        for j, p in enumerate(pairs):
            try:
                a, b = p["a"], p["b"]
            except (KeyError, TypeError):
                raise InvalidInput(f"{where}.pairs[{j}]: expected keys 'a' and 'b'") from None
            out.append(
                (matrix_from_json(a, f"{where}.pairs[{j}].a"), matrix_from_json(b, f"{where}.pairs[{j}].b"))
            )
        return cls(dimE, dimF, tuple(out))


@dataclass(frozen=True)
class NormBracket:
    lower: float
    upper: float
    lower_method: str = ""
    upper_method: str = ""

    def __post_init__(self):
        if self.lower < 0 or self.upper < 0:
            raise InvalidInput("norm bounds must be nonnegative")
        if self.lower > self.upper + INEQUALITY_SLACK:
            raise ArithmeticError(
                f"certified bracket is inverted: lower={self.lower!r} > upper={self.upper!r}"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, slack: float = INEQUALITY_SLACK) -> bool:
        return self.lower - slack <= value <= self.upper + slack


def reduce_representation(w: TensorElement, rtol: float = 1e-10, atol: float = 1e-14) -> TensorElement:
    """Minimal-length representation of ``w`` from an SVD of its matricization.

    The returned a-side and b-side families are each linearly independent
    (in fact orthogonal in the Hilbert-Schmidt inner product).
    """
    if not w.pairs:
        return w
    u, s, vh = np.linalg.svd(w.coefficient_matrix(), full_matrices=False)
    if s[0] <= atol:
        return TensorElement.zero(w.dimE, w.dimF)
    k = int(np.sum(s > max(rtol * s[0], atol)))
    root = np.sqrt(s[:k])
    a = (u[:, :k] * root).T.reshape(k, w.dimE, w.dimE)
    b = (vh[:k].T * root).T.reshape(k, w.dimF, w.dimF)
    return TensorElement(w.dimE, w.dimF, tuple(zip(a, b)))


def random_tensor(rng: np.random.Generator, dimE: int, dimF: int, length: int) -> TensorElement:
    """Sum of ``length`` elementary tensors with Ginibre factors."""
    return TensorElement(
        dimE, dimF, tuple((ginibre(rng, dimE), ginibre(rng, dimF)) for _ in range(length))
    )
