"""Fourier algebra ``A(G)`` and group von Neumann algebra ``VN(G)`` of a finite group.

Haar measure is counting measure, ``lambda(x) e_t = e_{x t}``, and
``A(G)`` carries the quotient norm through
``Psi(xi ⊗ eta)(x) = sum_s xi(x^{-1} s) eta(s)``.  The norm is computed as
the trace-class norm of

    M_f = (1/n) sum_t f(t^{-1}) lambda(t),    tr(lambda(s) M_f) = f(s),

the image of any representing operator under the trace-preserving
conditional expectation onto ``VN(G)``.  :func:`ag_norm_dual_oracle`
recomputes the same number from the ``VN(G)`` side by projected ascent.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InvalidInput
from .hochschild import Bimodule, CommutativeAlgebra, derivation_space, pointwise_algebra
from .matcore import transpose_map

__all__ = [
    "AGFunction",
    "FiniteGroup",
    "VNElement",
    "ag_norm",
    "ag_norm_dual_oracle",
    "ag_tensor",
    "check_adjoint_is_transpose",
    "check_map",
    "cyclic_group",
    "cyclic_subgroup",
    "derivations_vanish",
    "dihedral_group",
    "herz_quotient_check",
    "pairing",
    "product_group",
    "psi_coefficient",
    "quaternion_group",
    "regular_rep",
    "restrict",
    "subgroup",
    "symmetric_group",
    "vn_norm",
]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group given by its Cayley table ``table[i, j] = index of g_i g_j``."""

    table: np.ndarray
    name: str = ""
    identity: int = field(init=False)
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        n = t.shape[0] if t.ndim == 2 else 0
        if t.ndim != 2 or t.shape != (n, n) or n < 1:
            raise InvalidInput(f"Cayley table must be square and nonempty, got shape {t.shape}")
        if t.min() < 0 or t.max() >= n:
            raise InvalidInput("Cayley table entries out of range")
        full = np.arange(n)
        if any((np.sort(t[i]) != full).any() or (np.sort(t[:, i]) != full).any() for i in range(n)):
            raise InvalidInput(f"Cayley table of {self.name!r} is not a Latin square")
        if not np.array_equal(t[t[:, :, None], full[None, None, :]], t[full[:, None, None], t[None, :, :]]):
            raise InvalidInput(f"Cayley table of {self.name!r} is not associative")
        ids = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
        if len(ids) != 1:
            raise InvalidInput(f"Cayley table of {self.name!r} has no two-sided identity")
        e = ids[0]
        inv = np.array([int(np.nonzero(t[i] == e)[0][0]) for i in range(n)])
        if not np.all(t[inv, full] == e):
            raise InvalidInput("left and right inverses disagree")
        t.flags.writeable = False
        inv.flags.writeable = False
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table.tolist(), "name": self.name}

    @classmethod
    def from_json(cls, obj) -> "FiniteGroup":
        try:
            order, table = int(obj["order"]), obj["table"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"group JSON: missing or malformed field {exc}") from None
        g = cls(np.array(table), str(obj.get("name", "")))
        if g.order != order:
            raise InvalidInput(f"group JSON: order {order} does not match table size {g.order}")
        return g


def _from_elements(elements, mul, name) -> FiniteGroup:
    index = {g: i for i, g in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(np.array(table), name)


def cyclic_group(n: int) -> FiniteGroup:
    return _from_elements(list(range(n)), lambda a, b: (a + b) % n, f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon (order ``2n``); ``D4`` has order 8."""
    elements = [(r, s) for s in (0, 1) for r in range(n)]

    def mul(a, b):
        (r1, s1), (r2, s2) = a, b
        return ((r1 + (-r2 if s1 else r2)) % n, s1 ^ s2)

    return _from_elements(elements, mul, f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    elements = list(itertools.permutations(range(n)))
    return _from_elements(elements, lambda p, q: tuple(p[q[i]] for i in range(n)), f"S{n}")


def quaternion_group() -> FiniteGroup:
    # unit quaternions ±1, ±i, ±j, ±k as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    basis_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, a) for s in (1, -1) for a in range(4)]

    def mul(x, y):
        s, a = basis_mul[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    return _from_elements(elements, mul, "Q8")


def product_group(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    """Direct product; the pair ``(x, y)`` has index ``x * |G2| + y``."""
    n1, n2 = G1.order, G2.order
    t = (G1.table[:, None, :, None] * n2 + G2.table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    return FiniteGroup(t, f"{G1.name}x{G2.name}")


GROUPS = {
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "Q8": quaternion_group,
    "D4": lambda: dihedral_group(4),
}


def group_by_name(name: str) -> FiniteGroup:
    """``Z<n>``, ``D<n>``, ``S3``, ``S4``, ``Q8`` or ``A x B`` products."""
    name = name.strip()
    if "x" in name:
        parts = [group_by_name(p) for p in name.split("x")]
        out = parts[0]
        for p in parts[1:]:
            out = product_group(out, p)
        return out
    if name in GROUPS:
        return GROUPS[name]()
    if name[:1] in "ZD" and name[1:].isdigit() and int(name[1:]) >= 1:
        return (cyclic_group if name[0] == "Z" else dihedral_group)(int(name[1:]))
    raise InvalidInput(f"unknown group name {name!r}")


@dataclass(frozen=True, eq=False)
class AGFunction:
    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        if v.shape != (self.group.order,):
            raise InvalidInput(f"expected {self.group.order} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidInput("function values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def delta(cls, G: FiniteGroup, s: int | None = None) -> "AGFunction":
        v = np.zeros(G.order)
        v[G.identity if s is None else s] = 1.0
        return cls(G, v)

    @classmethod
    def ones(cls, G: FiniteGroup) -> "AGFunction":
        return cls(G, np.ones(G.order))

    @classmethod
    def random(cls, G: FiniteGroup, rng) -> "AGFunction":
        return cls(G, rng.standard_normal(G.order) + 1j * rng.standard_normal(G.order))

    def __mul__(self, other: "AGFunction") -> "AGFunction":
        return AGFunction(self.group, self.values * other.values)

    def to_json(self) -> dict:
        return {"group": self.group.name or self.group.to_json(),
                "values": [[float(z.real), float(z.imag)] for z in self.values]}

    @classmethod
    def from_json(cls, obj) -> "AGFunction":
        try:
            g, vals = obj["group"], obj["values"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"AGFunction JSON: missing field {exc}") from None
        G = group_by_name(g) if isinstance(g, str) else FiniteGroup.from_json(g)
        try:
            v = [complex(re, im) for re, im in vals]
        except (TypeError, ValueError):
            raise InvalidInput("AGFunction JSON: values must be [re, im] pairs") from None
        return cls(G, v)


@dataclass(frozen=True, eq=False)
class VNElement:
    """``T = sum_s c_s lambda(s)``."""

    group: FiniteGroup
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.complex128)
        if c.shape != (self.group.order,):
            raise InvalidInput(f"expected {self.group.order} coefficients, got shape {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "coefficients", c)

    def matrix(self) -> np.ndarray:
        return np.einsum("s,sab->ab", self.coefficients, _regular_stack(self.group))

    @classmethod
    def from_matrix(cls, G: FiniteGroup, T) -> "VNElement":
        """Coefficients ``c_s = (1/n) tr(lambda(s)* T)``; exact when ``T`` lies in ``VN(G)``."""
        lam = _regular_stack(G)
        c = np.einsum("sba,ba->s", lam.conj(), np.asarray(T)) / G.order
        return cls(G, c)


def regular_rep(G: FiniteGroup, s: int) -> np.ndarray:
    """Left translation ``[lambda(s) f](t) = f(s^{-1} t)`` as a permutation matrix."""
    if not 0 <= int(s) < G.order:
        raise InvalidInput(f"element index {s} out of range for group of order {G.order}")
    n = G.order
    m = np.zeros((n, n))
    m[G.table[s], np.arange(n)] = 1.0
    return m


def _regular_stack(G: FiniteGroup) -> np.ndarray:
    n = G.order
    lam = np.zeros((n, n, n))
    lam[np.arange(n)[:, None], G.table, np.arange(n)[None, :]] = 1.0
    return lam


def psi_coefficient(G: FiniteGroup, xi, eta) -> AGFunction:
    """``x -> sum_s xi(x^{-1} s) eta(s)``."""
    xi, eta = np.asarray(xi, dtype=complex), np.asarray(eta, dtype=complex)
    if xi.shape != (G.order,) or eta.shape != (G.order,):
        raise InvalidInput(f"xi and eta must have length {G.order}")
    n = G.order
    vals = [np.sum(xi[G.table[G.inverse[x], np.arange(n)]] * eta) for x in range(n)]
    return AGFunction(G, vals)


def vn_norm(T: VNElement) -> float:
    return float(np.linalg.norm(T.matrix(), 2))


def pairing(T: VNElement, f: AGFunction) -> complex:
    """``<T, f> = sum_s c_s f(s)``, so that ``<lambda(s), f> = f(s)``."""
    return complex(np.dot(T.coefficients, f.values))


def trace_class_representative(f: AGFunction) -> np.ndarray:
    G = f.group
    c = f.values[G.inverse] / G.order
    return np.einsum("t,tab->ab", c, _regular_stack(G))


def ag_norm(f: AGFunction) -> float:
    M = trace_class_representative(f)
    return float(np.linalg.svd(M, compute_uv=False).sum())


def _project_ball(c: np.ndarray, lam: np.ndarray, n: int) -> np.ndarray:
    T = np.einsum("s,sab->ab", c, lam)
    u, s, vh = np.linalg.svd(T)
    T = (u * np.minimum(s, 1.0)) @ vh
    return np.einsum("sba,ba->s", lam, T) / n  # lambda(s) is real, so lambda(s)* = lambda(s)^T


@dataclass(frozen=True)
class DualOracleResult:
    value: float
    iterations: int
    converged: bool


def _dual_ascent(f_vals, lam, n, support, iterations, tol) -> DualOracleResult:
    """Projected gradient ascent on ``Re sum_s c_s f(s)`` over ``||sum c_s lambda(s)|| <= 1``."""
    g = np.zeros(n, dtype=complex)
    g[support] = np.conj(f_vals[support])
    gnorm = np.linalg.norm(g)
    if gnorm == 0:
        return DualOracleResult(0.0, 0, True)
    g /= gnorm
    c = np.zeros(n, dtype=complex)
    best, history = 0.0, []
    k = 0
    for k in range(1, iterations + 1):
        c = _project_ball(c + g / np.sqrt(k), lam, n)
        c[~support] = 0.0
        # certify feasibility of the reported value
        val = float(np.real(np.dot(c, f_vals)))
        scale = max(1.0, float(np.linalg.norm(np.einsum("s,sab->ab", c, lam), 2)))
        best = max(best, val / scale)
        history.append(best)
        if k > 50 and history[-1] - history[-51] <= tol * max(1.0, best):
            return DualOracleResult(best, k, True)
    return DualOracleResult(best, k, False)


def ag_norm_dual_oracle(f: AGFunction, iterations: int = 5000, tol: float = 1e-12, full: bool = False):
    """``sup{|<T, f>| : T in VN(G), ||T|| <= 1}`` by projected ascent started at ``T = 0``.

    Every iterate is feasible, so the value is a lower bound for the norm;
    a warning is issued if the ascent has not stalled within ``iterations``.
    """
    G = f.group
    res = _dual_ascent(f.values, _regular_stack(G), G.order, np.ones(G.order, bool), iterations, tol)
    if not res.converged:
        warnings.warn(f"dual oracle did not converge in {iterations} iterations", RuntimeWarning)
    return res if full else res.value


def check_map(f: AGFunction) -> AGFunction:
    return AGFunction(f.group, f.values[f.group.inverse])


@dataclass(frozen=True)
class CheckAdjointReport:
    group: str
    trials: int
    max_pairing_error: float
    max_reextraction_error: float
    max_level_error: float
    passed: bool

    def to_json(self) -> dict:
        return asdict(self)


def check_adjoint_is_transpose(G: FiniteGroup, trials: int = 50, seed=0, max_level: int = 3,
                               tol: float = 1e-10) -> CheckAdjointReport:
    """Compare the transpose on ``VN(G)`` with the adjoint of the check map.

    Also checks that the transpose is isometric from the opposite matrix
    norms to the ordinary ones at levels ``1..max_level``.
    """
    from .ostensor import level_norm

    rng = np.random.default_rng(seed)
    n = G.order
    pair_err = reext_err = level_err = 0.0
    for _ in range(trials):
        T = VNElement(G, rng.standard_normal(n) + 1j * rng.standard_normal(n))
        f = AGFunction.random(G, rng)
        Tt_mat = transpose_map(T.matrix())
        Tt = VNElement.from_matrix(G, Tt_mat)
        reext_err = max(reext_err, float(np.max(np.abs(Tt.matrix() - Tt_mat))))
        pair_err = max(pair_err, abs(pairing(Tt, f) - pairing(T, check_map(f))))
        for level in range(1, max_level + 1):
            m = 2
            coeffs = [rng.standard_normal((level, level)) + 1j * rng.standard_normal((level, level)) for _ in range(m)]
            Ts = [VNElement(G, rng.standard_normal(n) + 1j * rng.standard_normal(n)).matrix() for _ in range(m)]
            lhs = level_norm(coeffs, [transpose_map(x) for x in Ts])
            rhs = level_norm(coeffs, Ts, opposite=True)
            level_err = max(level_err, abs(lhs - rhs) / max(1.0, rhs))
    passed = bool(max(pair_err, reext_err, level_err) <= tol)
    return CheckAdjointReport(G.name, trials, pair_err, reext_err, level_err, passed)


def subgroup(G: FiniteGroup, elements) -> tuple[FiniteGroup, np.ndarray]:
    """Subgroup on the listed element indices (in that order) and the inclusion map."""
    idx = np.array(sorted(set(int(e) for e in elements)), dtype=np.int64)
    if idx.size == 0 or idx.min() < 0 or idx.max() >= G.order:
        raise InvalidInput("subgroup elements must be valid, nonempty indices")
    pos = {int(g): i for i, g in enumerate(idx)}
    try:
        table = [[pos[int(G.table[a, b])] for b in idx] for a in idx]
        [pos[int(G.inverse[a])] for a in idx]
    except KeyError:
        raise InvalidInput("listed elements are not closed under product and inverse") from None
    return FiniteGroup(np.array(table), f"{G.name}|{len(idx)}"), idx


def cyclic_subgroup(G: FiniteGroup, generator: int) -> np.ndarray:
    out, x = [G.identity], int(generator)
    while x != G.identity:
        out.append(x)
        x = G.mul(x, generator)
    return np.array(sorted(out))


def restrict(f: AGFunction, elements) -> AGFunction:
    H, idx = subgroup(f.group, elements)
    return AGFunction(H, f.values[idx])


@dataclass(frozen=True)
class HerzReport:
    norm_on_subgroup: float
    dual_lower: float
    primal_upper: float
    zero_extension_norm: float
    zero_extension_attains: bool
    converged: bool
    passed: bool

    @property
    def minimal_extension_norm(self) -> float:
        return self.primal_upper

    def to_json(self) -> dict:
        return asdict(self)


def _primal_descent(G, idx, g_vals, start, iterations, tol):
    """Projected subgradient descent on ``||M_f||_1`` over extensions of ``g``."""
    n = G.order
    free = np.ones(n, bool)
    free[idx] = False
    lam = _regular_stack(G)
    f = start.copy()
    best = ag_norm(AGFunction(G, f))
    for k in range(1, iterations + 1):
        M = trace_class_representative(AGFunction(G, f))
        u, _, vh = np.linalg.svd(M)
        U = u @ vh  # subgradient of the trace norm at M
        # d||M_f||_1 / d f(t) through M_f = (1/n) sum f(t^{-1}) lambda(t)
        grad = np.conj(np.einsum("ba,tba->t", U.conj(), lam)[G.inverse]) / n
        grad[~free] = 0.0
        if not np.any(grad):
            break
        f = f - 1e-2 * best * grad / (np.linalg.norm(grad) * np.sqrt(k))
        best = min(best, ag_norm(AGFunction(G, f)))
    return best


def herz_quotient_check(g: AGFunction, G: FiniteGroup, elements, iterations: int = 5000,
                        tol: float = 1e-5) -> HerzReport:
    """Minimal ``A(G)`` norm of extensions of ``g`` from the subgroup ``elements``.

    Bracketed by a dual ascent over ``VN`` elements supported on the subgroup
    (lower) and a primal descent started at the zero extension (upper); both
    must match the ``A(H)`` norm of ``g``.
    """
    H, idx = subgroup(G, elements)
    if g.group.order != H.order or not np.array_equal(g.group.table, H.table):
        raise InvalidInput("g must be a function on the subgroup spanned by `elements`")
    target = ag_norm(g)
    support = np.zeros(G.order, bool)
    support[idx] = True
    f_vals = np.zeros(G.order, dtype=complex)
    f_vals[idx] = g.values
    dual = _dual_ascent(f_vals, _regular_stack(G), G.order, support, iterations, 1e-12)
    zero_ext = ag_norm(AGFunction(G, f_vals))
    upper = _primal_descent(G, idx, g.values, f_vals, min(iterations, 200), tol)
    if not dual.converged:
        warnings.warn("Herz dual ascent did not converge", RuntimeWarning)
    passed = bool(abs(upper - target) <= tol and abs(dual.value - target) <= tol)
    return HerzReport(
        norm_on_subgroup=target,
        dual_lower=dual.value,
        primal_upper=upper,
        zero_extension_norm=zero_ext,
        zero_extension_attains=bool(abs(zero_ext - upper) <= tol),
        converged=dual.converged,
        passed=passed,
    )


def ag_tensor(u: AGFunction, v: AGFunction, product: FiniteGroup | None = None) -> AGFunction:
    P = product_group(u.group, v.group) if product is None else product
    return AGFunction(P, np.kron(u.values, v.values))


@dataclass(frozen=True)
class DerivationReport:
    group: str
    dimension: int
    passed: bool

    def to_json(self) -> dict:
        return asdict(self)


def fourier_algebra(G: FiniteGroup) -> CommutativeAlgebra:
    """``A(G)`` as an algebra: pointwise product on the basis of point masses."""
    A = pointwise_algebra(G.order)
    return CommutativeAlgebra(A.structure, None, f"A({G.name})")


def derivations_vanish(G: FiniteGroup) -> DerivationReport:
    """Dimension of the derivations ``A(G) -> A(G)*``; zero for every finite group."""
    A = fourier_algebra(G)
    dim = len(derivation_space(Bimodule.dual(A)))
    return DerivationReport(G.name, dim, dim == 0)
