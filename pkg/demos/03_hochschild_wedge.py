"""Hochschild cochains on small commutative algebras and the wedge cocycle.

Run with ``python3 demos/03_hochschild_wedge.py``.
"""
# %%
import numpy as np

from oslab import hochschild as hs
from oslab import trig

rng = np.random.default_rng(2)

# %% [markdown]
# Semisimple algebras have no derivations; the dual numbers C[eps]/(eps^2)
# have exactly one, D(eps) = eps.  Random algebras C[x]/(p) with a repeated
# root are non-semisimple as well.

# %%
for A in (hs.pointwise_algebra(3), hs.dual_numbers(), hs.random_commutative_algebra(rng, 4)):
    dims = [len(hs.derivation_space(X)) for X in (hs.Bimodule.regular(A), hs.Bimodule.dual(A))]
    print(f"{A.name:22s} Der(A,A)={dims[0]}  Der(A,A*)={dims[1]}")

# %% [markdown]
# The coboundary squares to zero, and every 2-coboundary is symmetric, so an
# alternating 2-cocycle can never be a coboundary.

# %%
A = hs.random_commutative_algebra(rng, 3)
X = hs.Bimodule.dual(A)
T = hs.Cochain(rng.standard_normal((3, 3)) + 0j, X)
d1 = hs.coboundary(T)
print("max |d2 d1 T| =", hs.coboundary(d1).max_abs(), " max |alt(d1 T)| =", hs.alternating_part(d1).max_abs())

# %% [markdown]
# Wedging two derivations gives a nonzero alternating 2-cocycle on A ⊗ B.
# The identity F(a^3 ⊗ b, a ⊗ b) = D(a^4) ⊗ D(b^2) / 4 shows nonvanishing
# from single elements.

# %%
D = hs.derivation_space(hs.Bimodule.regular(hs.dual_numbers()))[0]
D = D * (1 / D.coefficients[1, 1])
F = hs.wedge(D, D)
one, eps = np.array([1, 0]), np.array([0, 1])
print("F(eps⊗1, 1⊗eps) =", F(np.kron(eps, one), np.kron(one, eps)).real)

B = hs.random_commutative_algebra(rng, 3)
DB = hs.derivation_space(hs.Bimodule.regular(B))[0]
a, b = hs.dual_numbers().random_element(rng), B.random_element(rng)
lhs, rhs = hs.wedge_power_identity(D, DB, a, b)
print("power identity error:", np.abs(lhs - rhs).max())

# %% [markdown]
# Polarization writes products through squares and fourth powers.

# %%
rep = hs.polarization_check(hs.pointwise_algebra(4), samples=20, seed=0)
print("polarization errors", rep.max_error_square, rep.max_error_fourth, "span dims of a^2:", rep.span_dims_square[:6])

# %% [markdown]
# On trigonometric polynomials the derivative pairing is a derivation and the
# Jacobian pairing on the 2-torus is an alternating cocycle; on monomials it is
# the C[z, w] wedge dw f1 dz f2 - dw f2 dz f1 times 4 pi^2 z w.

# %%
g, h, f = (trig.random_trig_poly(rng, 1, 2) for _ in range(3))
print("Leibniz defect:", abs(trig.c1_derivation_pairing(g * h, f)
                             - trig.c1_derivation_pairing(g, h * f) - trig.c1_derivation_pairing(h, g * f)))
f1, f2 = trig.TrigPoly.monomial((2, 1)), trig.TrigPoly.monomial((1, 3))
print("Jacobian density:", trig.c1_cocycle_density(f1, f2).terms)
print("wedge * 4 pi^2 zw:", (trig.ur_wedge(f1, f2) * trig.TrigPoly.monomial((1, 1)) * (4 * np.pi**2)).terms)
