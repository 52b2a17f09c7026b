"""Elementary operators ``c -> sum_j a_j c b_j`` on Schatten classes.

``c`` is a ``dimE x dimF`` matrix (an operator ``F -> E``).  With
column-stacking ``vec``, the matrix of ``c -> a c b`` is ``kron(b^T, a)``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidInput
from .matcore import as_matrix, haar_unitary
from .tensor import TensorElement

__all__ = [
    "ElementaryOperator",
    "RainwaterReport",
    "apply_phi",
    "matricize",
    "phi1_lower",
    "phi1_lower_direct",
    "phi2_norm_exact",
    "phi_inf_lower",
    "verify_rainwater",
]

DEFAULT_RESTARTS = 32
ASCENT_SLACK = 1e-6


def vec(c: np.ndarray) -> np.ndarray:
    return np.asarray(c).reshape(-1, order="F")


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return np.asarray(v).reshape(rows, cols, order="F")


def matricize(w: TensorElement) -> np.ndarray:
    """``sum_j kron(b_j^T, a_j)``, the matrix of the elementary operator on ``vec(c)``."""
    n = w.dimE * w.dimF
    if not w.pairs:
        return np.zeros((n, n), dtype=complex)
    return sum(np.kron(b.T, a) for a, b in w.pairs)


@dataclass(frozen=True)
class ElementaryOperator:
    w: TensorElement

    @property
    def matricization(self) -> np.ndarray:
        return matricize(self.w)

    def __call__(self, c) -> np.ndarray:
        return apply_phi(self.w, c)


def apply_phi(w: TensorElement, c) -> np.ndarray:
    c = as_matrix(c, "c")
    if c.shape != (w.dimE, w.dimF):
        raise InvalidInput(f"c must have shape {(w.dimE, w.dimF)}, got {c.shape}")
    if not w.pairs:
        return np.zeros_like(c)
    return np.einsum("jab,bc,jcd->ad", w.a_stack, c, w.b_stack)


def phi2_norm_exact(w: TensorElement) -> float:
    """Operator norm of ``Phi`` on Hilbert-Schmidt operators (exact, via SVD)."""
    if not w.pairs:
        return 0.0
    return float(np.linalg.norm(matricize(w), 2))


def _start_contractions(rng, restarts: int, rows: int, cols: int) -> np.ndarray:
    m = max(rows, cols)
    return np.stack([haar_unitary(rng, m)[:rows, :cols] for _ in range(restarts)])


def _polar(g: np.ndarray) -> np.ndarray:
    """Batched unitary polar factor ``Z W*`` of ``g^*``-alignment: maximizes ``Re tr(c g)``."""
    w_, _, zh = np.linalg.svd(g, full_matrices=False)
    return np.conj(np.swapaxes(zh, -1, -2)) @ np.conj(np.swapaxes(w_, -1, -2))


def _ascent_inf(A, B, c, max_iter, tol):
    """Alternating ascent for ``max ||sum_j a_j c b_j||`` over the unit ball of ``S_inf``.

    ``A`` is (k, m, m), ``B`` is (k, n, n), ``c`` a batch (R, m, n).
    Returns the best certified value per restart.
    """
    best = np.zeros(c.shape[0])
    prev = np.full(c.shape[0], -np.inf)
    for _ in range(max_iter):
        phi = np.einsum("jab,rbc,jcd->rad", A, c, B)
        u, s, vh = np.linalg.svd(phi, full_matrices=False)
        val = s[:, 0] / np.linalg.norm(c, ord=2, axis=(1, 2))
        best = np.maximum(best, val)
        if np.all(np.abs(val - prev) <= tol * np.maximum(1.0, val)):
            break
        prev = val
        top_u = u[:, :, 0]
        top_v = np.conj(vh[:, 0, :])
        # linear functional c -> u* Phi(c) v is c -> tr(c G), G = sum_j b_j v u* a_j
        g = np.einsum("jab,rb,rc,jcd->rad", B, top_v, np.conj(top_u), A)
        c = _polar(g)
    return best


def phi_inf_lower(
    w: TensorElement,
    restarts: int = DEFAULT_RESTARTS,
    seed=0,
    max_iter: int = 2000,
    tol: float = 1e-14,
) -> float:
    """Certified lower bound for ``||Phi(w)||`` on ``S_inf(F, E)``.

    Every candidate ``c`` is a partial isometry, so each reported value is
    attained; restarts are Haar-random unitaries (or their corners).
    """
    if not w.pairs:
        return 0.0
    rng = np.random.default_rng(seed)
    c0 = _start_contractions(rng, restarts, w.dimE, w.dimF)
    return float(_ascent_inf(w.a_stack, w.b_stack, c0, max_iter, tol).max())


def phi1_lower(w: TensorElement, restarts: int = DEFAULT_RESTARTS, seed=0, **kw) -> float:
    """Lower bound for ``||Phi(w)||`` on ``S_1(F, E)`` through trace duality.

    Under ``<s, t> = tr(s t)`` the adjoint of ``Phi_1(w)`` is ``Phi_inf`` of the
    flipped element acting on ``S_inf(E, F)``, and adjoints share norms.
    """
    from .ostensor import flip

    return phi_inf_lower(flip(w), restarts=restarts, seed=seed, **kw)


def phi1_lower_direct(
    w: TensorElement,
    restarts: int = DEFAULT_RESTARTS,
    seed=0,
    max_iter: int = 2000,
    tol: float = 1e-14,
) -> float:
    """Ascent on ``S_1`` itself over rank-one ``c = x y*`` (the extreme points)."""
    if not w.pairs:
        return 0.0
    A, B = w.a_stack, w.b_stack
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((restarts, w.dimE)) + 1j * rng.standard_normal((restarts, w.dimE))
    y = rng.standard_normal((restarts, w.dimF)) + 1j * rng.standard_normal((restarts, w.dimF))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    best = np.zeros(restarts)
    prev = np.full(restarts, -np.inf)
    for _ in range(max_iter):
        c = x[:, :, None] * np.conj(y[:, None, :])
        phi = np.einsum("jab,rbc,jcd->rad", A, c, B)
        u, s, vh = np.linalg.svd(phi, full_matrices=False)
        val = s.sum(axis=1) / (np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1))
        best = np.maximum(best, val)
        if np.all(np.abs(val - prev) <= tol * np.maximum(1.0, val)):
            break
        prev = val
        t = np.conj(np.swapaxes(vh, 1, 2)) @ np.conj(np.swapaxes(u, 1, 2))
        k = np.einsum("jab,rbc,jcd->rad", B, t, A)
        ku, _, kvh = np.linalg.svd(k, full_matrices=False)
        y = ku[:, :, 0]
        x = np.conj(kvh[:, 0, :])
    return float(best.max())


@dataclass(frozen=True)
class RainwaterReport:
    phi_inf: float
    phi_1: float
    phi_2: float
    h: float
    h_flip: float
    interpolation_estimate: float
    pass_inf: bool
    pass_1: bool
    pass_2: bool

    @property
    def passed(self) -> bool:
        return self.pass_inf and self.pass_1 and self.pass_2

    def to_json(self) -> dict:
        return asdict(self) | {"passed": self.passed}


def verify_rainwater(
    w: TensorElement,
    restarts: int = DEFAULT_RESTARTS,
    seed=0,
    haagerup: tuple[float, float] | None = None,
    slack: float = ASCENT_SLACK,
) -> RainwaterReport:
    """Check the three Schatten-class bounds for ``Phi(w)`` against Haagerup upper bounds.

    ``haagerup`` may supply precomputed ``(h(w), h(flip w))`` upper bounds.
    The large side of every inequality is a certified upper bound and the
    small side is either exact (``p = 2``) or an attained value.
    """
    from .ostensor import flip, haagerup_upper

    if haagerup is None:
        h = haagerup_upper(w, restarts, seed)
        h_flip = haagerup_upper(flip(w), restarts, seed)
    else:
        h, h_flip = haagerup
    p_inf = phi_inf_lower(w, restarts, seed)
    p_1 = phi1_lower(w, restarts, seed)
    p_2 = phi2_norm_exact(w)
    return RainwaterReport(
        phi_inf=p_inf,
        phi_1=p_1,
        phi_2=p_2,
        h=h,
        h_flip=h_flip,
        interpolation_estimate=float(np.sqrt(p_inf * p_1)),
        pass_inf=bool(p_inf <= h + slack),
        pass_1=bool(p_1 <= h_flip + slack),
        pass_2=bool(p_2 <= np.sqrt(h * h_flip) + slack),
    )
