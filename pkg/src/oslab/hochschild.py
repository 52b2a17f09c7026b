"""Hochschild cochains on finite-dimensional commutative algebras.

An algebra is given by structure constants ``c[i, j, k]`` with
``e_i e_j = sum_k c[i, j, k] e_k``.  A bimodule over it stores
``left[i, x, y]`` (coefficient of ``f_y`` in ``e_i . f_x``) and
``right[i, x, y]`` (coefficient of ``f_y`` in ``f_x . e_i``).  A cochain of
degree ``n`` is a dense array of shape ``(dimA,) * n + (dimX,)``; all
identities are checked on basis tuples, which suffices by multilinearity.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InvalidInput
from .matcore import haar_unitary

__all__ = [
    "Bimodule",
    "Cochain",
    "CommutativeAlgebra",
    "PolarizationReport",
    "alternating_part",
    "coboundary",
    "derivation_space",
    "dual_numbers",
    "is_alternating",
    "is_symmetric",
    "is_two_derivation",
    "monogenic_algebra",
    "pointwise_algebra",
    "polarization_check",
    "pullback",
    "random_commutative_algebra",
    "scalar_algebra",
    "symmetric_part",
    "tensor_algebra",
    "tensor_bimodule",
    "wedge",
    "wedge_power_identity",
]

TOL = 1e-10
RANK_RTOL = 1e-8


def _tol(scale: float, tol: float = TOL) -> float:
    return tol * max(1.0, scale)


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class CommutativeAlgebra:
    structure: np.ndarray
    unit: int | None = None
    name: str = ""

    def __post_init__(self):
        c = _frozen(self.structure)
        if c.ndim != 3 or len(set(c.shape)) != 1 or c.shape[0] < 1:
            raise InvalidInput(f"structure constants must have shape (n, n, n), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise InvalidInput("structure constants must be finite")
        object.__setattr__(self, "structure", c)
        scale = float(np.max(np.abs(c)))
        if np.max(np.abs(c - c.transpose(1, 0, 2))) > _tol(scale):
            raise InvalidInput(f"algebra {self.name!r} is not commutative")
        # (e_i e_j) e_k - e_i (e_j e_k)
        left = np.einsum("ijm,mkn->ijkn", c, c)
        right = np.einsum("jkm,imn->ijkn", c, c)
        if np.max(np.abs(left - right)) > _tol(scale * scale):
            raise InvalidInput(f"algebra {self.name!r} is not associative")
        if self.unit is not None:
            u = int(self.unit)
            if not 0 <= u < self.dim or np.max(np.abs(c[u] - np.eye(self.dim))) > _tol(scale):
                raise InvalidInput(f"basis element {self.unit} is not a unit")

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[i] = 1.0
        return e

    def one(self) -> np.ndarray:
        if self.unit is None:
            raise InvalidInput(f"algebra {self.name!r} has no designated unit")
        return self.basis(self.unit)

    def multiply(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def power(self, x, n: int) -> np.ndarray:
        if n < 1:
            raise InvalidInput("only positive powers are defined without a unit")
        out = np.asarray(x, dtype=complex)
        for _ in range(n - 1):
            out = self.multiply(out, x)
        return out

    def random_element(self, rng) -> np.ndarray:
        return rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)

    def to_json(self) -> dict:
        s = self.structure
        return {
            "dim": self.dim,
            "structure": [[[[float(z.real), float(z.imag)] for z in row] for row in mat] for mat in s],
            "unit": self.unit,
        }

    @classmethod
    def from_json(cls, obj, name: str = "") -> "CommutativeAlgebra":
        try:
            dim = int(obj["dim"])
            raw = obj["structure"]
            unit = obj.get("unit")
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InvalidInput(f"algebra: missing or malformed field {exc}") from None
        arr = np.array(raw, dtype=float)
        if arr.shape == (dim, dim, dim, 2):
            arr = arr[..., 0] + 1j * arr[..., 1]
        elif arr.shape != (dim, dim, dim):
            raise InvalidInput(f"algebra: structure has shape {arr.shape}, expected {(dim,) * 3}[x2]")
        return cls(arr, unit, name)


def scalar_algebra() -> CommutativeAlgebra:
    return CommutativeAlgebra(np.ones((1, 1, 1)), 0, "C")


def pointwise_algebra(n: int) -> CommutativeAlgebra:
    """Functions on an ``n``-point set with pointwise product (semisimple)."""
    c = np.zeros((n, n, n))
    for i in range(n):
        c[i, i, i] = 1.0
    return CommutativeAlgebra(c, None, f"C^{n}")


def monogenic_algebra(poly, name: str = "") -> CommutativeAlgebra:
    """``C[x]/(p)`` on the basis ``1, x, ..., x^{d-1}``; ``poly`` lists coefficients from ``x^0`` up."""
    p = np.trim_zeros(np.asarray(poly, dtype=complex), "b")
    d = len(p) - 1
    if d < 1:
        raise InvalidInput("polynomial must have positive degree")
    p = p / p[-1]
    # reductions of x^0 .. x^{2d-2} modulo p
    red = np.zeros((2 * d - 1, d), dtype=complex)
    red[:d] = np.eye(d)
    for m in range(d, 2 * d - 1):
        shifted = np.concatenate([[0], red[m - 1]])  # x * x^{m-1}
        red[m] = shifted[:d] - shifted[d] * p[:d]
    c = np.zeros((d, d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            c[i, j] = red[i + j]
    return CommutativeAlgebra(c, 0, name or f"C[x]/({np.round(p, 3).tolist()})")


def dual_numbers() -> CommutativeAlgebra:
    """``C[eps]/(eps^2)`` with basis ``(1, eps)``."""
    return monogenic_algebra([0, 0, 1], "C[eps]/(eps^2)")


def change_basis(A: CommutativeAlgebra, S) -> CommutativeAlgebra:
    """Same algebra written in the basis ``f_a = sum_i S[i, a] e_i``."""
    S = np.asarray(S, dtype=complex)
    Sinv = np.linalg.inv(S)
    c = np.einsum("ia,jb,ijk,ck->abc", S, S, A.structure, Sinv)
    return CommutativeAlgebra(c, None, A.name + "'")


def random_commutative_algebra(rng, dim: int) -> CommutativeAlgebra:
    """``C[x]/(p)`` for a random monic ``p`` with a repeated root, in a random unitary basis.

    The repeated root makes the algebra non-semisimple, so it carries
    nonzero derivations into itself.  Roots have modulus about 1/2 and the
    basis change is unitary, which keeps the structure constants of order 1.
    """
    if dim == 1:
        return change_basis(scalar_algebra(), [[np.exp(2j * np.pi * rng.random())]])
    roots = 0.5 * (rng.standard_normal(dim - 1) + 1j * rng.standard_normal(dim - 1)) / np.sqrt(2)
    roots = np.concatenate([roots, roots[:1]])
    A = monogenic_algebra(np.polynomial.polynomial.polyfromroots(roots), f"random{dim}")
    return change_basis(A, haar_unitary(rng, dim))


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: CommutativeAlgebra
    left: np.ndarray
    right: np.ndarray
    name: str = ""

    def __post_init__(self):
        L, R = _frozen(self.left), _frozen(self.right)
        n = self.algebra.dim
        if L.ndim != 3 or L.shape[0] != n or L.shape[1] != L.shape[2] or L.shape != R.shape:
            raise InvalidInput(f"actions must have shape ({n}, d, d), got {L.shape} and {R.shape}")
        object.__setattr__(self, "left", L)
        object.__setattr__(self, "right", R)
        c = self.algebra.structure
        scale = max(1.0, float(np.max(np.abs(L), initial=0)), float(np.max(np.abs(R), initial=0)))
        tol = _tol(scale * scale * max(1.0, float(np.max(np.abs(c)))))
        # (e_i e_j).x = e_i.(e_j.x)
        if np.max(np.abs(np.einsum("ijm,mxy->ijxy", c, L) - np.einsum("jxz,izy->ijxy", L, L)), initial=0) > tol:
            raise InvalidInput(f"bimodule {self.name!r}: left action is not associative")
        # x.(e_i e_j) = (x.e_i).e_j
        if np.max(np.abs(np.einsum("ijm,mxy->ijxy", c, R) - np.einsum("ixz,jzy->ijxy", R, R)), initial=0) > tol:
            raise InvalidInput(f"bimodule {self.name!r}: right action is not associative")
        # (e_i.x).e_j = e_i.(x.e_j)
        if np.max(np.abs(np.einsum("ixz,jzy->ijxy", L, R) - np.einsum("jxz,izy->ijxy", R, L)), initial=0) > tol:
            raise InvalidInput(f"bimodule {self.name!r}: left and right actions do not commute")

    @property
    def dim(self) -> int:
        return self.left.shape[1]

    @property
    def symmetric(self) -> bool:
        return bool(np.max(np.abs(self.left - self.right), initial=0) <= TOL * max(1.0, np.max(np.abs(self.left), initial=0)))

    def act_left(self, a, x) -> np.ndarray:
        return np.einsum("i,x,ixy->y", a, x, self.left)

    def act_right(self, x, a) -> np.ndarray:
        return np.einsum("x,i,ixy->y", x, a, self.right)

    @classmethod
    def regular(cls, A: CommutativeAlgebra) -> "Bimodule":
        return cls(A, A.structure, A.structure.transpose(1, 0, 2), f"{A.name}")

    @classmethod
    def dual(cls, A: CommutativeAlgebra) -> "Bimodule":
        """``A*`` in the dual basis: ``(a.phi)(x) = phi(x a)``, ``(phi.a)(x) = phi(a x)``."""
        c = A.structure
        left = np.einsum("kim->imk", c)
        right = np.einsum("ikm->imk", c)
        return cls(A, left, right, f"{A.name}*")


@dataclass(frozen=True, eq=False)
class Cochain:
    coefficients: np.ndarray
    module: Bimodule = field(repr=False)

    def __post_init__(self):
        T = _frozen(self.coefficients)
        n, d = self.module.algebra.dim, self.module.dim
        if T.ndim < 1 or T.shape != (n,) * (T.ndim - 1) + (d,):
            raise InvalidInput(f"cochain coefficients have shape {T.shape}; expected (dimA,)*n + ({d},)")
        object.__setattr__(self, "coefficients", T)

    @property
    def degree(self) -> int:
        return self.coefficients.ndim - 1

    @property
    def algebra(self) -> CommutativeAlgebra:
        return self.module.algebra

    def __call__(self, *args) -> np.ndarray:
        if len(args) != self.degree:
            raise InvalidInput(f"degree-{self.degree} cochain takes {self.degree} arguments")
        out = self.coefficients
        for a in args:
            out = np.tensordot(np.asarray(a, dtype=complex), out, axes=(0, 0))
        return out

    def __add__(self, other):
        return Cochain(self.coefficients + other.coefficients, self.module)

    def __sub__(self, other):
        return Cochain(self.coefficients - other.coefficients, self.module)

    def __mul__(self, lam):
        return Cochain(lam * self.coefficients, self.module)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coefficients), initial=0.0))

    def is_zero(self, tol: float = TOL) -> bool:
        return self.max_abs() <= tol

    def to_json(self):
        T = self.coefficients
        return {"degree": self.degree, "coefficients": np.stack([T.real, T.imag], axis=-1).tolist()}

    @classmethod
    def zero(cls, module: Bimodule, degree: int) -> "Cochain":
        n = module.algebra.dim
        return cls(np.zeros((n,) * degree + (module.dim,)), module)


def coboundary(T: Cochain) -> Cochain:
    """Hochschild coboundary of a cochain of degree 0, 1 or 2."""
    L, R = T.module.left, T.module.right
    c = T.algebra.structure
    X = T.coefficients
    if T.degree == 0:
        out = np.einsum("x,ixy->iy", X, L - R)
    elif T.degree == 1:
        out = (
            np.einsum("ixy,jx->ijy", L, X)
            - np.einsum("ijk,ky->ijy", c, X)
            + np.einsum("ix,jxy->ijy", X, R)
        )
    elif T.degree == 2:
        out = (
            np.einsum("ixy,jlx->ijly", L, X)
            - np.einsum("ijk,kly->ijly", c, X)
            + np.einsum("jlk,iky->ijly", c, X)
            - np.einsum("ijx,lxy->ijly", X, R)
        )
    else:
        raise InvalidInput(f"coboundary is implemented for degrees 0, 1, 2; got {T.degree}")
    return Cochain(out, T.module)


def _require_degree2(T: Cochain):
    if T.degree != 2:
        raise InvalidInput(f"expected a degree-2 cochain, got degree {T.degree}")


def alternating_part(T: Cochain) -> Cochain:
    _require_degree2(T)
    X = T.coefficients
    return Cochain(0.5 * (X - X.transpose(1, 0, 2)), T.module)


def symmetric_part(T: Cochain) -> Cochain:
    _require_degree2(T)
    X = T.coefficients
    return Cochain(0.5 * (X + X.transpose(1, 0, 2)), T.module)


def is_alternating(T: Cochain, tol: float = TOL) -> bool:
    _require_degree2(T)
    return symmetric_part(T).max_abs() <= _tol(T.max_abs(), tol)


def is_symmetric(T: Cochain, tol: float = TOL) -> bool:
    _require_degree2(T)
    return alternating_part(T).max_abs() <= _tol(T.max_abs(), tol)


def first_variable_defect(T: Cochain) -> np.ndarray:
    """``T(e_i e_j, e_k) - e_i.T(e_j, e_k) - T(e_i, e_k).e_j`` on all basis triples."""
    _require_degree2(T)
    c = T.algebra.structure
    L, R = T.module.left, T.module.right
    X = T.coefficients
    return (
        np.einsum("ijm,mky->ijky", c, X)
        - np.einsum("ixy,jkx->ijky", L, X)
        - np.einsum("ikx,jxy->ijky", X, R)
    )


def _scale(T: Cochain) -> float:
    m = T.module
    return T.max_abs() * max(
        1.0, float(np.max(np.abs(T.algebra.structure))), float(np.max(np.abs(m.left), initial=0))
    )


def is_two_derivation(T: Cochain, tol: float = TOL) -> bool:
    """Derivation in each variable, checked through the first variable.

    Only licensed for symmetric or alternating ``T``; otherwise raises
    :class:`InvalidInput`.  When ``T`` passes and the module is symmetric,
    the cocycle identity is verified as well.
    """
    if not (is_symmetric(T, tol) or is_alternating(T, tol)):
        raise InvalidInput("first-variable test requires a symmetric or alternating cochain")
    ok = float(np.max(np.abs(first_variable_defect(T)), initial=0)) <= _tol(_scale(T), tol)
    if ok and T.module.symmetric:
        resid = coboundary(T).max_abs()
        if resid > _tol(_scale(T), tol):
            raise ArithmeticError(f"2-derivation has nonzero coboundary ({resid:.3e})")
    return ok


def is_derivation(D: Cochain, tol: float = TOL) -> bool:
    if D.degree != 1:
        raise InvalidInput("derivations are degree-1 cochains")
    return coboundary(D).max_abs() <= _tol(_scale(D), tol)


def _coboundary_matrix(module: Bimodule) -> np.ndarray:
    n, d = module.algebra.dim, module.dim
    cols = []
    for idx in range(n * d):
        e = np.zeros(n * d, dtype=complex)
        e[idx] = 1.0
        cols.append(coboundary(Cochain(e.reshape(n, d), module)).coefficients.ravel())
    return np.array(cols).T


def derivation_space(module: Bimodule, rtol: float = RANK_RTOL) -> list[Cochain]:
    """Orthonormal basis of the derivations ``A -> X`` (kernel of the first coboundary)."""
    n, d = module.algebra.dim, module.dim
    M = _coboundary_matrix(module)
    _, s, vh = np.linalg.svd(M)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * smax)) if smax > 0 else 0
    null = vh[rank:].conj()
    return [Cochain(v.reshape(n, d), module) for v in null]


def tensor_algebra(A: CommutativeAlgebra, B: CommutativeAlgebra) -> CommutativeAlgebra:
    """``A ⊗ B`` on the product basis ``e_i ⊗ f_k -> i * dimB + k``."""
    n = A.dim * B.dim
    c = np.einsum("ijm,kln->ikjlmn", A.structure, B.structure).reshape(n, n, n)
    unit = None if A.unit is None or B.unit is None else A.unit * B.dim + B.unit
    return CommutativeAlgebra(c, unit, f"{A.name}⊗{B.name}")


def tensor_bimodule(X: Bimodule, Y: Bimodule) -> Bimodule:
    AB = tensor_algebra(X.algebra, Y.algebra)
    n, d = AB.dim, X.dim * Y.dim

    def amp(P, Q):
        return np.einsum("ixz,kyw->ikxyzw", P, Q).reshape(n, d, d)

    return Bimodule(AB, amp(X.left, Y.left), amp(X.right, Y.right), f"{X.name}⊗{Y.name}")


def wedge(D_A: Cochain, D_B: Cochain, tol: float = TOL) -> Cochain:
    """Alternating 2-cocycle on ``A ⊗ B`` built from derivations ``D_A``, ``D_B``.

    ``F(a1⊗b1, a2⊗b2) = [D_A(a1).a2] ⊗ [b1.D_B(b2)] - [a1.D_A(a2)] ⊗ [D_B(b1).b2]``
    """
    for name, D in (("D_A", D_A), ("D_B", D_B)):
        if D.degree != 1:
            raise InvalidInput(f"{name} must be a degree-1 cochain")
        if not D.module.symmetric:
            raise InvalidInput(f"{name} must take values in a symmetric bimodule")
        if not is_derivation(D, tol):
            raise InvalidInput(f"{name} is not a derivation")
    X, Y = D_A.module, D_B.module
    P = np.einsum("ix,jxy->ijy", D_A.coefficients, X.right)  # D_A(e_i).e_j
    Q = np.einsum("ixy,jx->ijy", X.left, D_A.coefficients)  # e_i.D_A(e_j)
    U = np.einsum("kyz,ly->klz", Y.left, D_B.coefficients)  # f_k.D_B(f_l)
    V = np.einsum("ky,lyz->klz", D_B.coefficients, Y.right)  # D_B(f_k).f_l
    XY = tensor_bimodule(X, Y)
    n = XY.algebra.dim
    F = np.einsum("ijx,kly->ikjlxy", P, U) - np.einsum("ijx,kly->ikjlxy", Q, V)
    F = Cochain(F.reshape(n, n, XY.dim), XY)
    if not is_alternating(F, tol):
        raise ArithmeticError("wedge output is not alternating")
    if not is_two_derivation(F, tol):
        raise ArithmeticError("wedge output is not a 2-derivation")
    return F


def wedge_power_identity(D_A: Cochain, D_B: Cochain, a, b, F: Cochain | None = None):
    """Both sides of ``F(a^3⊗b, a⊗b) = 1/4 D_A(a^4) ⊗ D_B(b^2)``."""
    F = wedge(D_A, D_B) if F is None else F
    A, B = D_A.algebra, D_B.algebra
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    lhs = F(np.kron(A.power(a, 3), b), np.kron(a, b))
    rhs = 0.25 * np.kron(D_A(A.power(a, 4)), D_B(B.power(b, 2)))
    return lhs, rhs


def is_homomorphism(theta, A: CommutativeAlgebra, B: CommutativeAlgebra, tol: float = TOL) -> bool:
    theta = np.asarray(theta, dtype=complex)
    if theta.shape != (B.dim, A.dim):
        raise InvalidInput(f"theta must have shape {(B.dim, A.dim)}, got {theta.shape}")
    lhs = np.einsum("ijk,pk->ijp", A.structure, theta)
    rhs = np.einsum("pi,qj,pqr->ijr", theta, theta, B.structure)
    scale = max(1.0, float(np.max(np.abs(theta))) ** 2 * float(np.max(np.abs(B.structure))))
    return float(np.max(np.abs(lhs - rhs))) <= _tol(scale, tol)


def pullback(F: Cochain, theta, source: CommutativeAlgebra, tol: float = TOL) -> Cochain:
    """``(theta* F)(a1, a2)(a0) = F(theta a1, theta a2)(theta a0)``.

    ``F`` is a degree-2 cochain on ``B`` into ``B*`` and ``theta`` a
    ``dimB x dimA`` matrix of a homomorphism ``source -> B``.
    """
    _require_degree2(F)
    B = F.algebra
    dual_B = Bimodule.dual(B)
    if F.module.dim != B.dim or not (
        np.allclose(F.module.left, dual_B.left) and np.allclose(F.module.right, dual_B.right)
    ):
        raise InvalidInput("pullback expects a cochain with values in the dual module B*")
    theta = np.asarray(theta, dtype=complex)
    if not is_homomorphism(theta, source, B, tol):
        raise InvalidInput("theta is not multiplicative on basis pairs")
    G = np.einsum("pi,qj,rk,pqr->ijk", theta, theta, theta, F.coefficients)
    out = Cochain(G, Bimodule.dual(source))
    if is_alternating(F, tol) and is_two_derivation(F, tol):
        if not (is_alternating(out, tol) and is_two_derivation(out, tol)):
            raise ArithmeticError("pullback of an alternating 2-cocycle failed the cocycle test")
        surjective = np.linalg.matrix_rank(theta, tol=RANK_RTOL * max(1.0, np.abs(theta).max())) == B.dim
        if surjective and not F.is_zero(tol) and out.is_zero(tol):
            raise ArithmeticError("pullback along a surjection killed a nonzero cocycle")
    return out


@dataclass(frozen=True)
class PolarizationReport:
    samples: int
    max_error_square: float
    max_error_fourth: float
    span_dims_square: list
    span_dims_fourth: list
    stabilized_square_at: int | None
    stabilized_fourth_at: int | None
    full_square: bool
    full_fourth: bool
    passed: bool

    def to_json(self) -> dict:
        return asdict(self)


def _rank(vectors) -> int:
    if not len(vectors):
        return 0
    s = np.linalg.svd(np.array(vectors), compute_uv=False)
    return int(np.sum(s > RANK_RTOL * s[0])) if s[0] > 0 else 0


def _stabilized(dims) -> int | None:
    """First sample count from which the span dimension never grows again."""
    if not dims:
        return None
    final = dims[-1]
    return next(i + 1 for i, d in enumerate(dims) if d == final)


def polarization_check(A: CommutativeAlgebra, samples: int = 100, seed=0, tol: float = 1e-9) -> PolarizationReport:
    """Check ``ab = ((a+b)^2 - (a-b)^2)/4`` and the quartic identity for ``a^2 b^2``."""
    rng = np.random.default_rng(seed)
    err2 = err4 = 0.0
    squares, fourths, dims2, dims4 = [], [], [], []
    sq = lambda x: A.multiply(x, x)
    for _ in range(samples):
        a, b = A.random_element(rng), A.random_element(rng)
        ab = A.multiply(a, b)
        pol2 = 0.25 * (sq(a + b) - sq(a - b))
        a2b2 = A.multiply(sq(a), sq(b))
        q = lambda x: sq(sq(x))
        pol4 = (q(a + b) + q(a - b) - q(a + 1j * b) - q(a - 1j * b)) / 24.0
        err2 = max(err2, float(np.max(np.abs(ab - pol2))) / max(1.0, float(np.max(np.abs(ab)))))
        err4 = max(err4, float(np.max(np.abs(a2b2 - pol4))) / max(1.0, float(np.max(np.abs(a2b2)))))
        squares.append(sq(a))
        fourths.append(q(a))
        dims2.append(_rank(squares))
        dims4.append(_rank(fourths))
    return PolarizationReport(
        samples=samples,
        max_error_square=err2,
        max_error_fourth=err4,
        span_dims_square=dims2,
        span_dims_fourth=dims4,
        stabilized_square_at=_stabilized(dims2),
        stabilized_fourth_at=_stabilized(dims4),
        full_square=bool(dims2 and dims2[-1] == A.dim),
        full_fourth=bool(dims4 and dims4[-1] == A.dim),
        passed=bool(err2 <= tol and err4 <= tol),
    )
