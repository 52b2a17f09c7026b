"""Verification suites that turn library checks into report rows.

Each row records one inequality or identity: ``lhs``, ``rhs``, the signed
``margin`` (positive means satisfied) and ``pass``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from . import elementary, fourier, hochschild, ostensor, trig
from .tensor import TensorElement, random_tensor


@dataclass(frozen=True)
class Row:
    name: str
    instance: int
    inputs_hash: str
    lhs: float
    rhs: float
    margin: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "inputs_hash": self.inputs_hash,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
        }


def inputs_hash(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def le(name, i, h, lhs, rhs, slack) -> Row:
    lhs, rhs = float(lhs), float(rhs)
    margin = rhs + slack - lhs
    return Row(name, i, h, lhs, rhs, margin, margin >= 0)


def close(name, i, h, lhs, rhs, tol) -> Row:
    lhs, rhs = float(np.real(lhs)) if np.isrealobj(lhs) else abs(lhs), float(rhs)
    margin = tol - abs(lhs - rhs)
    return Row(name, i, h, lhs, rhs, margin, margin >= 0)


def small(name, i, h, err, tol) -> Row:
    err = float(err)
    return Row(name, i, h, err, 0.0, tol - err, err <= tol)


def random_instance(seed: int, index: int, dimE: int, dimF: int) -> TensorElement:
    rng = np.random.default_rng([seed, index])
    return random_tensor(rng, dimE, dimF, int(rng.integers(1, 4)))


# -- tensor suites -----------------------------------------------------------


def norms_rows(i: int, w: TensorElement, restarts: int, seed: int, tol: float) -> list[Row]:
    h = inputs_hash(w.to_json())
    t = ostensor.twisted_spatial_norm(w)
    s = ostensor.spatial_norm(w)
    hu = ostensor.haagerup_upper(w, restarts, seed)
    hl = ostensor.haagerup_lower(w, seed=seed)
    pb = ostensor.projective_bracket(w, restarts, seed)
    return [
        close("twisted_spatial==phi2_exact", i, h, t, elementary.phi2_norm_exact(w), tol),
        le("spatial<=haagerup_upper", i, h, s, hu, tol),
        le("haagerup_lower<=haagerup_upper", i, h, hl, hu, max(tol, elementary.ASCENT_SLACK)),
        le("haagerup_lower<=projective_upper", i, h, hl, pb.upper, max(tol, elementary.ASCENT_SLACK)),
        le("twisted_spatial<=projective_upper", i, h, t, pb.upper, tol),
        le("projective_lower<=projective_upper", i, h, pb.lower, pb.upper, max(tol, elementary.ASCENT_SLACK)),
    ]


def chain_rows(i: int, w: TensorElement, restarts: int, seed: int, tol: float) -> list[Row]:
    h = inputs_hash(w.to_json())
    r = ostensor.verify_twisted_chain(w, restarts, seed, slack=tol)
    return [
        le("twisted<=sqrt(h*h_flip)", i, h, r.t, r.geometric_mean, tol),
        le("sqrt(h*h_flip)<=(h+h_flip)/2", i, h, r.geometric_mean, r.arithmetic_mean, tol),
        le("twisted<=projective_upper", i, h, r.t, r.p, tol),
    ]


def rainwater_rows(i: int, w: TensorElement, restarts: int, seed: int, tol: float) -> list[Row]:
    h = inputs_hash(w.to_json())
    r = elementary.verify_rainwater(w, restarts=restarts, seed=seed, slack=tol)
    return [
        le("phi_inf<=h", i, h, r.phi_inf, r.h, tol),
        le("phi_1<=h_flip", i, h, r.phi_1, r.h_flip, tol),
        le("phi_2<=sqrt(h*h_flip)", i, h, r.phi_2, np.sqrt(r.h * r.h_flip), tol),
    ]


# -- cocycle suite -----------------------------------------------------------


COCYCLE_SUITES = ("complex", "wedge", "polarization", "trig")


def _random_setting(rng, dim):
    A = hochschild.random_commutative_algebra(rng, dim)
    X = hochschild.Bimodule.regular(A) if rng.random() < 0.5 else hochschild.Bimodule.dual(A)
    return A, X


def random_algebras(seed: int) -> list:
    rng = np.random.default_rng([seed, 101])
    return [hochschild.random_commutative_algebra(rng, d) for d in (1, 2, 3, 4, 5)]


def complex_rows(algebras, count: int, seed: int, tol: float = 1e-10) -> list[Row]:
    """``delta2(delta1 T) = 0`` and symmetry of ``delta1 T`` on ``count`` random cochains."""
    rows = []
    rng = np.random.default_rng([seed, 102])
    for i in range(count):
        A = algebras[i % len(algebras)]
        X = hochschild.Bimodule.regular(A) if i % 2 == 0 else hochschild.Bimodule.dual(A)
        T = hochschild.Cochain(rng.standard_normal((A.dim, X.dim)) + 1j * rng.standard_normal((A.dim, X.dim)), X)
        d1 = hochschild.coboundary(T)
        h = inputs_hash({"algebra": A.to_json(), "T": T.to_json()})
        scale = max(1.0, d1.max_abs())
        rows.append(small("delta2(delta1 T)==0", i, h, hochschild.coboundary(d1).max_abs() / scale, tol))
        rows.append(small("alt(delta1 T)==0", i, h, hochschild.alternating_part(d1).max_abs() / scale, tol))
    return rows


def wedge_rows(algebras, count: int, seed: int, tol: float = 1e-10) -> list[Row]:
    rows = []
    rng = np.random.default_rng([seed, 103])
    D = hochschild.derivation_space(hochschild.Bimodule.regular(hochschild.dual_numbers()))[0]
    D = D * (1.0 / D.coefficients[1, 1])
    A = D.algebra
    F = hochschild.wedge(D, D)
    one, eps = A.basis(0), A.basis(1)
    val = F(np.kron(eps, one), np.kron(one, eps))
    rows.append(small("dual-number wedge F(eps⊗1,1⊗eps)==eps⊗eps", 0, inputs_hash(A.to_json()),
                      np.max(np.abs(val - np.kron(eps, eps))), tol))
    # derivations exist on the non-semisimple random algebras (dim >= 2)
    pool = []
    for A in algebras:
        for X in (hochschild.Bimodule.regular(A), hochschild.Bimodule.dual(A)):
            basis = hochschild.derivation_space(X)
            if basis:
                pool.append(basis)
    if not pool:
        return rows
    for i in range(count):
        bA, bB = pool[i % len(pool)], pool[(i + 1) % len(pool)]
        DA = sum((D * complex(*rng.standard_normal(2)) for D in bA[1:]), bA[0])
        DB = sum((D * complex(*rng.standard_normal(2)) for D in bB[1:]), bB[0])
        F = hochschild.wedge(DA, DB)
        h = inputs_hash({"A": DA.to_json(), "B": DB.to_json()})
        s = max(1.0, F.max_abs())
        rows.append(small("wedge alternating", i, h, hochschild.symmetric_part(F).max_abs() / s, tol))
        rows.append(small("wedge first-variable derivation", i, h,
                          np.max(np.abs(hochschild.first_variable_defect(F))) / s, tol))
        rows.append(small("wedge delta2==0", i, h, hochschild.coboundary(F).max_abs() / s, tol))
        a, b = DA.algebra.random_element(rng), DB.algebra.random_element(rng)
        lhs, rhs = hochschild.wedge_power_identity(DA, DB, a, b, F)
        rows.append(small("F(a^3⊗b,a⊗b)==D(a^4)⊗D(b^2)/4", i, h,
                          np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))), tol))
    return rows


def polarization_rows(algebras, count: int, seed: int, tol: float = 1e-9) -> list[Row]:
    rows = []
    for j, A in enumerate(algebras):
        rep = hochschild.polarization_check(A, samples=max(count, 10), seed=[seed, j])
        h = inputs_hash(A.to_json())
        rows.append(small(f"polarization quadratic [{A.name}]", j, h, rep.max_error_square, tol))
        rows.append(small(f"polarization quartic [{A.name}]", j, h, rep.max_error_fourth, tol))
    return rows


def cocycle_rows(count: int, seed: int, suite: str = "all", algebras=None, tol: float = 1e-10) -> list[Row]:
    suites = COCYCLE_SUITES if suite == "all" else (suite,)
    if algebras is None:
        algebras = random_algebras(seed)
        polar = [hochschild.pointwise_algebra(3), hochschild.dual_numbers(), *algebras]
    else:
        polar = list(algebras)
    rows: list[Row] = []
    if "complex" in suites and algebras:
        rows += complex_rows(algebras, count, seed, tol)
    if "wedge" in suites:
        rows += wedge_rows(algebras, count, seed, tol)
    if "polarization" in suites:
        rows += polarization_rows(polar, count, seed)
    if "trig" in suites:
        rows += trig_rows(count, seed, tol)
    return rows


def trig_rows(count: int, seed: int, tol: float = 1e-10) -> list[Row]:
    rows = []
    rng = np.random.default_rng([seed, 202])
    for i in range(count):
        g, k, f = (trig.random_trig_poly(rng, 1, 2) for _ in range(3))
        h = inputs_hash({"i": i, "seed": seed, "kind": "circle"})
        lhs = trig.c1_derivation_pairing(g * k, f)
        rhs = trig.c1_derivation_pairing(g, k * f) + trig.c1_derivation_pairing(k, g * f)
        rows.append(small("C1(T) Leibniz", i, h, abs(lhs - rhs) / max(1.0, abs(lhs)), tol))
        g, k, u, f = (trig.random_trig_poly(rng, 2, 1) for _ in range(4))
        h = inputs_hash({"i": i, "seed": seed, "kind": "torus"})
        lhs = trig.c1_cocycle_pairing(g * k, u, f)
        rhs = trig.c1_cocycle_pairing(g, u, k * f) + trig.c1_cocycle_pairing(k, u, g * f)
        rows.append(small("C1(T^2) first-variable cocycle", i, h, abs(lhs - rhs) / max(1.0, abs(lhs)), tol))
        alt = trig.c1_cocycle_pairing(g, u, f) + trig.c1_cocycle_pairing(u, g, f)
        rows.append(small("C1(T^2) alternating", i, h, abs(alt), tol))
    for i, (p, q) in enumerate([((1, 0), (0, 1)), ((2, 1), (1, 3)), ((0, 2), (3, 0)), ((1, 1), (2, 2))]):
        f1, f2 = trig.TrigPoly.monomial(p), trig.TrigPoly.monomial(q)
        zw = trig.TrigPoly.monomial((1, 1))
        expected = trig.ur_wedge(f1, f2) * zw * (4 * np.pi**2)
        diff = trig.c1_cocycle_density(f1, f2) - expected
        rows.append(small("T^2 cocycle == C[z,w] wedge on monomials", i, f"{p}{q}", diff.max_abs(), tol))
    return rows


# -- fourier suite -----------------------------------------------------------

FOURIER_SUITES = ("norms", "check", "herz", "products", "derivations")


def dft_l1_norm(f: fourier.AGFunction, shape: tuple[int, ...]) -> float:
    """``sum |f^|`` for a product of cyclic groups indexed in row-major order."""
    return float(np.abs(np.fft.fftn(f.values.reshape(shape)) / f.group.order).sum())


def fourier_rows(G: fourier.FiniteGroup, suite: str, count: int, seed: int) -> list[Row]:
    suites = FOURIER_SUITES if suite == "all" else (suite,)
    rows: list[Row] = []
    rng = np.random.default_rng([seed, 303, G.order])
    gh = inputs_hash(G.to_json())
    if "norms" in suites:
        rows.append(close("||delta_e||==1", 0, gh, fourier.ag_norm(fourier.AGFunction.delta(G)), 1.0, 1e-10))
        rows.append(close("||1||==1", 0, gh, fourier.ag_norm(fourier.AGFunction.ones(G)), 1.0, 1e-10))
        for i in range(count):
            f = fourier.AGFunction.random(G, rng)
            h = inputs_hash(f.to_json())
            n = fourier.ag_norm(f)
            rows.append(close("ag_norm==dual_oracle", i, h, n, fourier.ag_norm_dual_oracle(f), 1e-6))
            xi, eta = rng.standard_normal(G.order), rng.standard_normal(G.order)
            psi = fourier.ag_norm(fourier.psi_coefficient(G, xi, eta))
            rows.append(le("||Psi(xi⊗eta)||<=||xi|| ||eta||", i, h, psi,
                           np.linalg.norm(xi) * np.linalg.norm(eta), 1e-9))
            g = fourier.AGFunction.random(G, rng)
            rows.append(le("submultiplicative", i, h, fourier.ag_norm(f * g), n * fourier.ag_norm(g), 1e-9))
            if G.is_abelian() and G.name.startswith("Z") and G.name[1:].isdigit():
                rows.append(close("ag_norm==l1(DFT)", i, h, n, dft_l1_norm(f, (G.order,)), 1e-8))
    if "check" in suites:
        for i in range(count):
            f = fourier.AGFunction.random(G, rng)
            h = inputs_hash(f.to_json())
            fc = fourier.check_map(f)
            rows.append(close("check isometry", i, h, fourier.ag_norm(fc), fourier.ag_norm(f), 1e-9))
            rows.append(small("check involution", i, h, np.max(np.abs(fourier.check_map(fc).values - f.values)), 1e-9))
        rep = fourier.check_adjoint_is_transpose(G, trials=count, seed=seed)
        err = max(rep.max_pairing_error, rep.max_reextraction_error, rep.max_level_error)
        rows.append(small("check adjoint == transpose", 0, gh, err, 1e-10))
    if "herz" in suites:
        seen = set()
        for x in range(G.order):
            idx = tuple(int(s) for s in fourier.cyclic_subgroup(G, x))
            if idx in seen or len(idx) in (1, G.order):
                continue
            seen.add(idx)
            H, _ = fourier.subgroup(G, idx)
            for i in range(max(1, count // 5)):
                f = fourier.AGFunction.random(G, rng)
                h = inputs_hash({"f": f.to_json(), "H": list(idx)})
                rows.append(le(f"restriction contraction H={list(idx)}", i, h,
                               fourier.ag_norm(fourier.restrict(f, idx)), fourier.ag_norm(f), 1e-9))
                g = fourier.AGFunction.random(H, rng)
                rep = fourier.herz_quotient_check(g, G, idx)
                rows.append(close(f"herz quotient dual H={list(idx)}", i, h, rep.dual_lower, rep.norm_on_subgroup, 1e-5))
                rows.append(close(f"herz quotient primal H={list(idx)}", i, h, rep.primal_upper, rep.norm_on_subgroup, 1e-5))
    if "products" in suites:
        Z2 = fourier.cyclic_group(2)
        P = fourier.product_group(G, Z2)
        for i in range(count):
            u, v = fourier.AGFunction.random(G, rng), fourier.AGFunction.random(Z2, rng)
            h = inputs_hash({"u": u.to_json(), "v": v.to_json()})
            prod = fourier.ag_norm(fourier.ag_tensor(u, v, P))
            rows.append(close("ag_norm cross norm", i, h, prod, fourier.ag_norm(u) * fourier.ag_norm(v), 1e-8))
    if "derivations" in suites:
        rep = fourier.derivations_vanish(G)
        rows.append(small("dim Der(A(G), A(G)*)==0", 0, gh, rep.dimension, 0.5))
    return rows
