"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""
import sys
import time
import warnings

import numpy as np
import pytest

from conftest import w1
from oslab import elementary, fourier as ff, hochschild as hs, ostensor, trig
from oslab.fourier import AGFunction
from oslab.tensor import NormBracket, random_tensor

RESULTS = []


def record(number, title, ok, detail):
    line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def random_corpus(count, max_dim, seed):
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        dE, dF = (int(d) for d in rng.integers(1, max_dim + 1, size=2))
        out.append(random_tensor(rng, dE, dF, int(rng.integers(1, 4))))
    return out


@pytest.fixture(scope="module")
def chain_corpus():
    """500 random instances (dims <= 5) with their twisted-chain reports."""
    corpus = random_corpus(500, 5, seed=2)
    return [(w, ostensor.verify_twisted_chain(w, restarts=2, seed=i)) for i, w in enumerate(corpus)]


def test_criterion_01_twisted_equals_phi2():
    t0 = time.perf_counter()
    corpus = random_corpus(200, 6, seed=1)
    err = max(abs(ostensor.twisted_spatial_norm(w) - elementary.phi2_norm_exact(w)) for w in corpus)
    elapsed = time.perf_counter() - t0
    record(1, "twisted spatial norm == exact Phi_2 norm", err <= 1e-9 and elapsed < 60,
           f"200 instances, max |diff| = {err:.2e}, {elapsed:.1f}s")


def test_criterion_02_twisted_chain(chain_corpus):
    failed = sum(not r.passed for _, r in chain_corpus)
    fam = []
    for n in range(2, 7):
        w = w1(n)
        br = NormBracket(ostensor.haagerup_lower(w), ostensor.haagerup_upper(w), "lower", "gauge")
        r = ostensor.verify_twisted_chain(w, restarts=2)
        fam.append(
            abs(ostensor.twisted_spatial_norm(w) - 1) <= 1e-9
            and abs(ostensor.spatial_norm(w) - n) <= 1e-9
            and abs(br.lower - n) <= 1e-9 and n - 1e-9 <= br.upper <= n + 1e-6
            and r.passed
        )
    record(2, "twisted <= sqrt(h h_flip) <= mean, twisted <= projective", failed == 0 and all(fam),
           f"{len(chain_corpus) - failed}/{len(chain_corpus)} random pass; w1 n=2..6 exact values {sum(fam)}/5")


def test_criterion_03_rainwater(chain_corpus):
    failed = 0
    for i, (w, c) in enumerate(chain_corpus):
        r = elementary.verify_rainwater(w, restarts=8, seed=i, haagerup=(c.h1, c.h2))
        failed += not r.passed
    gaps = []
    for n in range(2, 7):
        r = elementary.verify_rainwater(w1(n), restarts=8)
        gaps.append(r.passed and abs(r.phi_2 - 1) <= 1e-9 and abs(np.sqrt(r.h * r.h_flip) - n) <= 1e-6)
    record(3, "Phi_inf <= h, Phi_1 <= h(flip), Phi_2 <= sqrt(h h(flip))", failed == 0 and all(gaps),
           f"{len(chain_corpus) - failed}/{len(chain_corpus)} random pass; w1 gap 1 <= n for n=2..6: {sum(gaps)}/5")


def test_criterion_04_hochschild():
    rng = np.random.default_rng(4)
    algebras = [hs.random_commutative_algebra(rng, d) for d in (1, 2, 3, 4, 5)]
    complex_err = 0.0
    for i in range(100):
        A = algebras[i % 5]
        X = hs.Bimodule.regular(A) if i % 2 else hs.Bimodule.dual(A)
        T = hs.Cochain(rng.standard_normal((A.dim, X.dim)) + 1j * rng.standard_normal((A.dim, X.dim)), X)
        complex_err = max(complex_err, hs.coboundary(hs.coboundary(T)).max_abs())

    pool = [hs.derivation_space(X) for A in algebras for X in (hs.Bimodule.regular(A), hs.Bimodule.dual(A))]
    pool = [b for b in pool if b]
    wedge_ok, identity_err, wedges = True, 0.0, 0
    for i, bA in enumerate(pool):
        for bB in pool[i:]:
            F = hs.wedge(bA[0], bB[0])
            wedges += 1
            wedge_ok &= hs.is_alternating(F) and hs.is_two_derivation(F) and hs.coboundary(F).is_zero(1e-10 * max(1, F.max_abs()))
            for _ in range(5):
                a, b = bA[0].algebra.random_element(rng), bB[0].algebra.random_element(rng)
                lhs, rhs = hs.wedge_power_identity(bA[0], bB[0], a, b, F)
                identity_err = max(identity_err, np.max(np.abs(lhs - rhs)) / max(1, np.max(np.abs(rhs))))

    A = hs.dual_numbers()
    D = hs.Cochain(np.array([[0, 0], [0, 1.0]]), hs.Bimodule.regular(A))
    F = hs.wedge(D, D)
    one, eps = A.basis(0), A.basis(1)
    dual_ok = not F.is_zero() and np.allclose(F(np.kron(eps, one), np.kron(one, eps)), np.kron(eps, eps), atol=1e-12)
    ok = complex_err <= 1e-10 and wedge_ok and dual_ok and identity_err <= 1e-10
    record(4, "Hochschild complex and wedge cocycle", ok,
           f"max |d2 d1 T| = {complex_err:.1e} over 100 cochains; {wedges} wedges alternating/2-derivation/closed: {wedge_ok}; "
           f"dual-number F(eps⊗1,1⊗eps)=eps⊗eps: {dual_ok}; power identity err {identity_err:.1e}")


def test_criterion_05_polarization():
    rng = np.random.default_rng(5)
    algebras = [hs.pointwise_algebra(3), hs.pointwise_algebra(5), hs.dual_numbers(),
                hs.random_commutative_algebra(rng, 3), hs.random_commutative_algebra(rng, 4)]
    reports = [hs.polarization_check(A, samples=200, seed=[5, j]) for j, A in enumerate(algebras)]
    errs = max(max(r.max_error_square, r.max_error_fourth) for r in reports)
    full = all(r.full_square and r.full_fourth and r.stabilized_square_at is not None for r in reports[:2])
    record(5, "polarization identities", all(r.passed for r in reports) and full,
           f"{sum(r.samples for r in reports)} pairs, max err {errs:.1e}; pointwise spans full: {full}")


def test_criterion_06_fourier_norms():
    rng = np.random.default_rng(6)
    names = [f"Z{n}" for n in range(2, 13)] + ["S3", "D4", "Q8"]
    oracle_err = dft_err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for name in names:
            G = ff.group_by_name(name)
            for _ in range(50):
                f = AGFunction.random(G, rng)
                n = ff.ag_norm(f)
                oracle_err = max(oracle_err, abs(ff.ag_norm_dual_oracle(f) - n))
                if G.is_abelian():
                    dft = np.fft.fft(f.values) / G.order
                    dft_err = max(dft_err, abs(np.abs(dft).sum() - n))
    unit_err = max(max(abs(ff.ag_norm(AGFunction.delta(G)) - 1), abs(ff.ag_norm(AGFunction.ones(G)) - 1))
                   for G in map(ff.group_by_name, names))
    ok = oracle_err <= 1e-6 and dft_err <= 1e-8 and unit_err <= 1e-10
    record(6, "A(G) norm: trace formula vs duality oracle vs DFT", ok,
           f"{50 * len(names)} functions; oracle {oracle_err:.1e}, DFT {dft_err:.1e}, units {unit_err:.1e}")


def test_criterion_07_check_map():
    rng = np.random.default_rng(7)
    iso = inv = 0.0
    for name in ("S3", "D4", "Q8", "Z6"):
        G = ff.group_by_name(name)
        for _ in range(50):
            f = AGFunction.random(G, rng)
            fc = ff.check_map(f)
            iso = max(iso, abs(ff.ag_norm(fc) - ff.ag_norm(f)))
            inv = max(inv, np.max(np.abs(ff.check_map(fc).values - f.values)))
    reps = [ff.check_adjoint_is_transpose(ff.group_by_name(n), trials=50, seed=7) for n in ("S3", "D4")]
    ok = iso <= 1e-9 and inv <= 1e-9 and all(r.passed for r in reps)
    record(7, "check map isometric involution, adjoint = transpose", ok,
           f"isometry {iso:.1e}, involution {inv:.1e}; adjoint S3/D4 max err "
           f"{max(max(r.max_pairing_error, r.max_reextraction_error, r.max_level_error) for r in reps):.1e}")


def test_criterion_08_herz():
    rng = np.random.default_rng(8)
    S3 = ff.symmetric_group(3)
    z3_in_s3 = next(ff.cyclic_subgroup(S3, x) for x in range(6) if len(ff.cyclic_subgroup(S3, x)) == 3)
    pairs = [(ff.cyclic_group(4), [0, 2]), (ff.cyclic_group(6), [0, 2, 4]), (S3, list(z3_in_s3))]
    contraction, quotient, worst = True, 0, 0.0
    for G, elems in pairs:
        H, idx = ff.subgroup(G, elems)
        for _ in range(20):
            f = AGFunction.random(G, rng)
            contraction &= ff.ag_norm(ff.restrict(f, idx)) <= ff.ag_norm(f) + 1e-9
            rep = ff.herz_quotient_check(AGFunction.random(H, rng), G, idx)
            quotient += rep.passed
            worst = max(worst, abs(rep.primal_upper - rep.norm_on_subgroup), abs(rep.dual_lower - rep.norm_on_subgroup))
    record(8, "Herz restriction is a quotient map", contraction and quotient == 60,
           f"contraction on 60 functions: {contraction}; quotient equality {quotient}/60, worst gap {worst:.1e}")


def test_criterion_09_cross_norm():
    rng = np.random.default_rng(9)
    err = 0.0
    for g1, g2 in (("Z3", "Z4"), ("Z2", "S3")):
        G1, G2 = ff.group_by_name(g1), ff.group_by_name(g2)
        P = ff.product_group(G1, G2)
        for _ in range(30):
            u, v = AGFunction.random(G1, rng), AGFunction.random(G2, rng)
            err = max(err, abs(ff.ag_norm(ff.ag_tensor(u, v, P)) - ff.ag_norm(u) * ff.ag_norm(v)))
    record(9, "A(G1 x G2) norm is a cross norm", err <= 1e-8, f"60 pairs, max err {err:.1e}")


def test_criterion_10_derivations_vanish():
    reps = [ff.derivations_vanish(ff.group_by_name(n)) for n in ("Z2", "Z5", "S3")]
    record(10, "no nonzero derivations A(G) -> A(G)*", all(r.dimension == 0 for r in reps),
           ", ".join(f"{r.group}: dim {r.dimension}" for r in reps))


def test_criterion_11_trig():
    rng = np.random.default_rng(11)
    leib = coc = alt = 0.0
    for _ in range(100):
        g, h, f = (trig.random_trig_poly(rng, 1, 2) for _ in range(3))
        lhs = trig.c1_derivation_pairing(g * h, f)
        leib = max(leib, abs(lhs - trig.c1_derivation_pairing(g, h * f) - trig.c1_derivation_pairing(h, g * f)))
        g, h, u, f = (trig.random_trig_poly(rng, 2, 1) for _ in range(4))
        lhs = trig.c1_cocycle_pairing(g * h, u, f)
        coc = max(coc, abs(lhs - trig.c1_cocycle_pairing(g, u, h * f) - trig.c1_cocycle_pairing(h, u, g * f)))
        alt = max(alt, abs(trig.c1_cocycle_pairing(g, u, f) + trig.c1_cocycle_pairing(u, g, f)))
    mono = 0.0
    zw = trig.TrigPoly.monomial((1, 1))
    for p in [(i, j) for i in range(3) for j in range(3)]:
        for q in [(i, j) for i in range(3) for j in range(3)]:
            f1, f2 = trig.TrigPoly.monomial(p), trig.TrigPoly.monomial(q)
            diff = trig.c1_cocycle_density(f1, f2) - trig.ur_wedge(f1, f2) * zw * (4 * np.pi**2)
            mono = max(mono, diff.max_abs())
    ok = max(leib, coc, alt, mono) <= 1e-10
    record(11, "trigonometric derivation and cocycle identities", ok,
           f"Leibniz {leib:.1e}, cocycle {coc:.1e}, alternating {alt:.1e}, C[z,w] wedge on 81 monomial pairs {mono:.1e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
