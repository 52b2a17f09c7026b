"""Norms on ``B(E) ⊗ B(F)``: spatial, twisted spatial, Haagerup and projective.

Conventions
-----------
* ``spatial_norm`` is the minimal (injective) norm, i.e. the norm of
  ``sum_j kron(a_j, b_j)`` in ``B(E ⊗ F)``.
* ``twisted_spatial_norm`` puts the opposite structure on the second
  factor, realized by ``b -> b^T``.
* The Haagerup norm uses the row-column form
  ``inf ||sum a_j a_j*||^{1/2} ||sum b_j* b_j||^{1/2}``;
  ``convention="column_row"`` gives ``inf ||sum a_j* a_j||^{1/2} ||sum b_j b_j*||^{1/2}``.

Haagerup and projective values are produced by gauge optimization over
invertible ``X`` acting on a minimal representation (``a -> a X``,
``b -> X^{-1} b``).  The value returned is always the objective evaluated
at an explicit representation, hence an upper bound whatever the optimizer
does.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize

from . import elementary
from .errors import InvalidInput
from .matcore import as_matrix, transpose_map
from .tensor import INEQUALITY_SLACK, NormBracket, TensorElement, reduce_representation

__all__ = [
    "NormBracket",
    "TensorElement",
    "TwistedChainReport",
    "flip",
    "haagerup_lower",
    "haagerup_objective",
    "haagerup_upper",
    "level_norm",
    "projective_bracket",
    "projective_objective",
    "reduce_representation",
    "spatial_norm",
    "twisted_spatial_norm",
    "verify_twisted_chain",
]

DEFAULT_RESTARTS = 16
SMOOTHING_POWERS = (20, 200, 2000)
CONVENTIONS = ("row_column", "column_row")


def spatial_norm(w: TensorElement) -> float:
    if not w.pairs:
        return 0.0
    return float(np.linalg.norm(w.operator(), 2))


def twisted_spatial_norm(w: TensorElement) -> float:
    return spatial_norm(w.map_b(transpose_map))


def flip(w: TensorElement) -> TensorElement:
    return TensorElement(w.dimF, w.dimE, tuple((b, a) for a, b in w.pairs))


# -- gauge machinery ---------------------------------------------------------


def _params_to_gauge(x: np.ndarray, k: int) -> np.ndarray:
    return (x[: k * k] + 1j * x[k * k :]).reshape(k, k)


def _gauge_to_params(X: np.ndarray) -> np.ndarray:
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


def _grad_to_params(K: np.ndarray) -> np.ndarray:
    # df = Re sum K_kl dX_kl  =>  df/dRe X = Re K, df/dIm X = -Im K
    return np.concatenate([K.real.ravel(), -K.imag.ravel()])


def _smoothed_log_lmax(M: np.ndarray, q: float):
    """``log (tr M^q)^{1/q}`` for PSD ``M`` and its gradient ``W`` (d = tr(W dM))."""
    mu, V = np.linalg.eigh(M)
    mu = np.clip(mu, 0.0, None)
    top = mu[-1]
    if top <= 0:
        return -np.inf, np.zeros_like(M)
    r = mu / top
    rq = r**q
    z = rq.sum()
    val = np.log(top) + np.log(z) / q
    weights = r ** (q - 1) / (top * z)
    W = (V * weights) @ V.conj().T
    return val, W


class _HaagerupGauge:
    """Objective ``P -> ||sum P_il a_i a_l*|| ||sum (P^-1)_il b_i* b_l||`` with ``P = X X*``."""

    def __init__(self, a: np.ndarray, b: np.ndarray):
        self.k = a.shape[0]
        self.Ka = np.einsum("iab,lcb->ilac", a, np.conj(a))  # a_i a_l*
        self.Kb = np.einsum("iba,lbc->ilac", np.conj(b), b)  # b_i* b_l

    def blocks(self, X):
        P = X @ X.conj().T
        Pinv = np.linalg.inv(P)
        Pinv = 0.5 * (Pinv + Pinv.conj().T)
        A = np.einsum("il,ilac->ac", P, self.Ka)
        B = np.einsum("il,ilac->ac", Pinv, self.Kb)
        return P, Pinv, 0.5 * (A + A.conj().T), 0.5 * (B + B.conj().T)

    def exact(self, X) -> float:
        _, _, A, B = self.blocks(X)
        la = max(np.linalg.eigvalsh(A)[-1], 0.0)
        lb = max(np.linalg.eigvalsh(B)[-1], 0.0)
        return float(np.sqrt(la * lb))

    def smooth(self, x, q):
        X = _params_to_gauge(x, self.k)
        try:
            P, Pinv, A, B = self.blocks(X)
        except np.linalg.LinAlgError:
            return np.inf, np.zeros_like(x)
        fa, Wa = _smoothed_log_lmax(A, q)
        fb, Wb = _smoothed_log_lmax(B, q)
        if not (np.isfinite(fa) and np.isfinite(fb)):
            return np.inf, np.zeros_like(x)
        Ga = np.einsum("ca,ilac->il", Wa, self.Ka)
        Gb = np.einsum("ca,ilac->il", Wb, self.Kb)
        gamma = 0.5 * (Ga.T - Pinv @ Gb.T @ Pinv)
        K = 2.0 * (X.conj().T @ gamma).T
        return 0.5 * (fa + fb), _grad_to_params(K)


class _ProjectiveGauge:
    """Objective ``X -> sum_j ||(a X)_j|| ||(X^-1 b)_j||``."""

    def __init__(self, a: np.ndarray, b: np.ndarray):
        self.a, self.b, self.k = a, b, a.shape[0]

    def reps(self, X):
        Y = np.linalg.inv(X)
        ap = np.einsum("iab,ij->jab", self.a, X)
        bp = np.einsum("ji,iab->jab", Y, self.b)
        return Y, ap, bp

    def exact(self, X) -> float:
        _, ap, bp = self.reps(X)
        na = np.linalg.norm(ap, ord=2, axis=(1, 2))
        nb = np.linalg.norm(bp, ord=2, axis=(1, 2))
        return float(np.sum(na * nb))

    def _norms(self, mats, q):
        vals, coeffs = [], []
        for m in mats:
            lv, W = _smoothed_log_lmax(m @ m.conj().T, q)
            s = np.exp(0.5 * lv)
            vals.append(s)
            # d s = Re tr(S dm) with S = s m* W
            coeffs.append(s * m.conj().T @ W)
        return np.array(vals), coeffs

    def smooth(self, x, q):
        X = _params_to_gauge(x, self.k)
        try:
            Y, ap, bp = self.reps(X)
        except np.linalg.LinAlgError:
            return np.inf, np.zeros_like(x)
        sa, Sa = self._norms(ap, q)
        sb, Sb = self._norms(bp, q)
        if not (np.all(np.isfinite(sa)) and np.all(np.isfinite(sb))):
            return np.inf, np.zeros_like(x)
        Ca = np.array([[np.trace(Sa[j] @ self.a[i]) for j in range(self.k)] for i in range(self.k)])
        Cb = np.array([[np.trace(Sb[j] @ self.b[i]) for i in range(self.k)] for j in range(self.k)])
        Ga = Ca * sb[None, :]
        Gb = Cb * sa[:, None]
        K = Ga - (Y @ Gb.T @ Y).T
        return float(np.sum(sa * sb)), _grad_to_params(K)


def _optimize_gauge(obj, k: int, restarts: int, seed, maxiter: int) -> tuple[float, np.ndarray]:
    best_val, best_X = obj.exact(np.eye(k, dtype=complex)), np.eye(k, dtype=complex)
    for r in range(max(restarts, 1)):
        rng = np.random.default_rng([_seed_int(seed), r])
        if r == 0:
            X0 = np.eye(k, dtype=complex)
        else:
            G = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            X0 = np.eye(k) + 0.5 * G / np.sqrt(2 * k)
        x = _gauge_to_params(X0)
        for q in SMOOTHING_POWERS:
            res = minimize(obj.smooth, x, args=(q,), jac=True, method="L-BFGS-B",
                           options={"maxiter": maxiter})
            if np.all(np.isfinite(res.x)):
                x = res.x
            X = _params_to_gauge(x, k)
            try:
                val = obj.exact(X)
            except np.linalg.LinAlgError:
                continue
            if np.isfinite(val) and val < best_val:
                best_val, best_X = val, X
    return best_val, best_X


def _seed_int(seed) -> int:
    if seed is None:
        return 0
    return int(seed)


def haagerup_objective(w: TensorElement, X=None, convention: str = "row_column") -> float:
    """Haagerup objective of the representation ``(a X, X^{-1} b)`` of ``w`` as given (no reduction)."""
    _check_convention(convention)
    if not w.pairs:
        return 0.0
    if convention == "column_row":
        w = w.adjoint_pairs()
        X = None if X is None else np.conj(X)
    k = len(w)
    X = np.eye(k, dtype=complex) if X is None else np.asarray(X, dtype=complex)
    return _HaagerupGauge(w.a_stack, w.b_stack).exact(X)


def haagerup_upper(
    w: TensorElement,
    restarts: int = DEFAULT_RESTARTS,
    seed=0,
    convention: str = "row_column",
    maxiter: int = 300,
) -> float:
    """Upper bound for the Haagerup norm by gauge optimization on a minimal representation."""
    _check_convention(convention)
    if convention == "column_row":
        # ||sum a*a|| ||sum b b*|| for w is the row-column objective of sum a* ⊗ b*
        w = w.adjoint_pairs()
    r = reduce_representation(w)
    if not r.pairs:
        return 0.0
    obj = _HaagerupGauge(r.a_stack, r.b_stack)
    val, _ = _optimize_gauge(obj, len(r), restarts, seed, maxiter)
    return val


def haagerup_lower(w: TensorElement, restarts: int = elementary.DEFAULT_RESTARTS, seed=0) -> float:
    """``max(spatial, attained ||Phi_inf(w)||)``; both are below the Haagerup norm."""
    if not w.pairs:
        return 0.0
    return max(spatial_norm(w), elementary.phi_inf_lower(w, restarts, seed))


def projective_objective(w: TensorElement) -> float:
    """``sum_j ||a_j|| ||b_j||`` for the representation as given."""
    return float(sum(np.linalg.norm(a, 2) * np.linalg.norm(b, 2) for a, b in w.pairs))


def projective_upper(w: TensorElement, restarts: int = DEFAULT_RESTARTS, seed=0, maxiter: int = 300) -> float:
    r = reduce_representation(w)
    if not r.pairs:
        return 0.0
    obj = _ProjectiveGauge(r.a_stack, r.b_stack)
    val, _ = _optimize_gauge(obj, len(r), restarts, seed, maxiter)
    return min(val, projective_objective(w))


def projective_bracket(w: TensorElement, restarts: int = DEFAULT_RESTARTS, seed=0) -> NormBracket:
    """Certified interval for the operator-space projective norm of ``w``."""
    if not w.pairs or not reduce_representation(w).pairs:
        return NormBracket(0.0, 0.0, "zero", "zero")
    lowers = {
        "twisted_spatial": twisted_spatial_norm(w),
        "haagerup_lower": haagerup_lower(w, seed=seed),
        "haagerup_lower_flip": haagerup_lower(flip(w), seed=seed),
    }
    method = max(lowers, key=lowers.get)
    upper = projective_upper(w, restarts, seed)
    return NormBracket(lowers[method], upper, method, "gauge_cross_sum")


@dataclass(frozen=True)
class TwistedChainReport:
    t: float
    h1: float
    h2: float
    p: float
    geometric_mean: float
    arithmetic_mean: float
    pass_twisted_le_geometric: bool
    pass_geometric_le_arithmetic: bool
    pass_twisted_le_projective: bool

    @property
    def passed(self) -> bool:
        return (
            self.pass_twisted_le_geometric
            and self.pass_geometric_le_arithmetic
            and self.pass_twisted_le_projective
        )

    def to_json(self) -> dict:
        return asdict(self) | {"passed": self.passed}


def verify_twisted_chain(
    w: TensorElement, restarts: int = DEFAULT_RESTARTS, seed=0, slack: float = INEQUALITY_SLACK
) -> TwistedChainReport:
    """``twisted <= sqrt(h(w) h(flip w)) <= (h(w) + h(flip w))/2`` and ``twisted <= projective``."""
    t = twisted_spatial_norm(w)
    h1 = haagerup_upper(w, restarts, seed)
    h2 = haagerup_upper(flip(w), restarts, seed)
    p = projective_upper(w, restarts, seed)
    g = float(np.sqrt(h1 * h2))
    m = 0.5 * (h1 + h2)
    return TwistedChainReport(
        t=t,
        h1=h1,
        h2=h2,
        p=p,
        geometric_mean=g,
        arithmetic_mean=m,
        pass_twisted_le_geometric=bool(t <= g + slack),
        pass_geometric_le_arithmetic=bool(g <= m + slack),
        pass_twisted_le_projective=bool(t <= p + slack),
    )


def level_norm(coeffs, elements, opposite: bool = False) -> float:
    """Norm of ``sum_i c_i ⊗ w_i`` at matrix level ``n``.

    With ``opposite=True`` the scalar coefficients are transposed first,
    which is the matrix norm of the opposite operator space structure.
    """
    coeffs, elements = list(coeffs), list(elements)
    if len(coeffs) != len(elements):
        raise InvalidInput(f"{len(coeffs)} coefficients but {len(elements)} elements")
    if not coeffs:
        return 0.0
    cs = [as_matrix(c, "coefficient") for c in coeffs]
    ws = [as_matrix(x, "element") for x in elements]
    if len({c.shape for c in cs}) != 1 or cs[0].shape[0] != cs[0].shape[1]:
        raise InvalidInput("coefficients must be square matrices of a common size")
    if len({x.shape for x in ws}) != 1:
        raise InvalidInput("elements must share a common shape")
    total = sum(np.kron(c.T if opposite else c, x) for c, x in zip(cs, ws))
    return float(np.linalg.norm(total, 2))


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise InvalidInput(f"unknown Haagerup convention {convention!r}; use one of {CONVENTIONS}")
