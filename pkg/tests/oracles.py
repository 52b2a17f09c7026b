"""Independent reference computations used by the tests.

Nothing here calls into ``oslab`` beyond plain data access, so agreement
with the library is a genuine cross-check.
"""
import numpy as np


def minimal_pairs(pairs, rtol=1e-10):
    """Minimal-length representation from the SVD of ``sum vec(a) vec(b)^T``."""
    a0, b0 = pairs[0]
    dE, dF = a0.shape[0], b0.shape[0]
    M = sum(np.outer(a.reshape(-1), b.reshape(-1)) for a, b in pairs)
    u, s, vh = np.linalg.svd(M)
    k = int(np.sum(s > rtol * max(s[0], 1e-300)))
    return [(u[:, j].reshape(dE, dE) * s[j], vh[j].reshape(dF, dF)) for j in range(k)]


def haagerup_sdp(pairs):
    """Haagerup norm ``inf ||sum a a*||^1/2 ||sum b* b||^1/2`` over gauges of a minimal representation.

    With ``P = X X*`` the problem is: minimize t subject to
    ``sum P_il a_i a_l* <= t`` and ``sum (P^-1)_il b_i* b_l <= 1``; the second
    constraint is a Schur complement.
    """
    import cvxpy as cp

    rep = minimal_pairs(pairs)
    k = len(rep)
    if k == 0:
        return 0.0
    dE, dF = rep[0][0].shape[0], rep[0][1].shape[0]
    P = cp.Variable((k, k), hermitian=True)
    t = cp.Variable()
    A = sum(P[i, l] * (rep[i][0] @ rep[l][0].conj().T) for i in range(k) for l in range(k))
    C = np.concatenate([b for _, b in rep], axis=0)
    M = cp.bmat([[cp.kron(P, np.eye(dF)), C], [C.conj().T, np.eye(dF)]])
    cp.Problem(cp.Minimize(t), [A << t * np.eye(dE), M >> 0]).solve(solver="CLARABEL")
    return float(np.sqrt(t.value))


def diag_grid_haagerup(steps=21):
    """Brute force over a grid of real 2x2 gauges for ``diag(1,0)⊗diag(1,0) + diag(0,1)⊗diag(0,1)``."""
    a = np.array([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    b = a.copy()
    grid = np.linspace(-2, 2, steps)
    X = np.array(np.meshgrid(grid, grid, grid, grid, indexing="ij")).reshape(4, -1).T.reshape(-1, 2, 2)
    X = X[np.abs(np.linalg.det(X)) > 1e-3]
    Y = np.linalg.inv(X)
    aa = np.einsum("ipq,nil->nlpq", a, X)
    bb = np.einsum("nli,ipq->nlpq", Y, b)
    A = np.einsum("nlpq,nlrq->npr", aa, aa.conj())
    B = np.einsum("nlqp,nlqr->npr", bb.conj(), bb)
    vals = np.sqrt(np.linalg.norm(A, 2, axis=(1, 2)) * np.linalg.norm(B, 2, axis=(1, 2)))
    return float(vals.min())


def elementary_matrix(pairs, dE, dF):
    """Matrix of ``c -> sum a c b`` in the basis of matrix units, column-stacked."""
    cols = []
    for q in range(dF):
        for p in range(dE):
            c = np.zeros((dE, dF), dtype=complex)
            c[p, q] = 1
            out = sum(a @ c @ b for a, b in pairs)
            cols.append(out.reshape(-1, order="F"))
    return np.array(cols).T


def cyclic_l1_dft(values):
    """``sum_chi |f^(chi)|`` for f on Z/n, normalized so the delta at 0 has norm 1."""
    values = np.asarray(values, dtype=complex)
    n = len(values)
    k = np.arange(n)
    F = np.exp(-2j * np.pi * np.outer(k, k) / n) @ values / n
    return float(np.abs(F).sum())


def regular_rep_from_table(table, s):
    n = len(table)
    L = np.zeros((n, n))
    for t in range(n):
        L[table[s][t], t] = 1
    return L


def trig_integral_bruteforce(terms_f, terms_g):
    """Zero-frequency coefficient of a product, from explicit dictionaries."""
    total = 0
    for kf, cf in terms_f.items():
        for kg, cg in terms_g.items():
            if all(x + y == 0 for x, y in zip(kf, kg)):
                total += cf * cg
    return total
