"""The Fourier algebra A(G) of a finite group.

Run with ``python3 demos/04_fourier_algebra.py``.
"""
# %%
import numpy as np

from oslab import fourier as ff
from oslab.fourier import AGFunction

rng = np.random.default_rng(3)

# %% [markdown]
# The norm of f is the trace norm of M_f = (1/n) sum_t f(t^-1) lambda(t), the
# unique element of the group algebra with tr(lambda(s) M_f) = f(s).  An
# independent projected ascent over the unit ball of VN(G) recovers the same
# number from the dual side.

# %%
for name in ("Z2", "Z6", "S3", "D4", "Q8"):
    G = ff.group_by_name(name)
    f = AGFunction.random(G, rng)
    res = ff.ag_norm_dual_oracle(f, full=True)
    print(f"{name:3s} ||f||_A = {ff.ag_norm(f):.12f}   dual ascent = {res.value:.12f} ({res.iterations} iterations)")

print("Z2, f=(1,3):", ff.ag_norm(AGFunction(ff.cyclic_group(2), [1, 3])))

# %% [markdown]
# For abelian groups A(G) is l^1 of the dual group.

# %%
G = ff.cyclic_group(8)
f = AGFunction.random(G, rng)
print("Z8 trace formula", ff.ag_norm(f), " l1 of DFT", np.abs(np.fft.fft(f.values) / 8).sum())

# %% [markdown]
# The check map f(x) -> f(x^-1) is an isometric involution, and its adjoint
# on VN(G) is the ordinary transpose of matrices.

# %%
S3 = ff.symmetric_group(3)
f = AGFunction.random(S3, rng)
print("isometry:", ff.ag_norm(f), ff.ag_norm(ff.check_map(f)))
print(ff.check_adjoint_is_transpose(S3, trials=20, seed=0))

# %% [markdown]
# Restriction to a subgroup is a quotient map: the smallest norm of an
# extension equals the norm on the subgroup.

# %%
idx = ff.cyclic_subgroup(S3, 1)
H, _ = ff.subgroup(S3, idx)
g = AGFunction.random(H, rng)
rep = ff.herz_quotient_check(g, S3, idx)
print(f"||g||_A(H) = {rep.norm_on_subgroup:.10f}; dual {rep.dual_lower:.10f}; primal {rep.primal_upper:.10f}; "
      f"zero extension {rep.zero_extension_norm:.10f}")

# %% [markdown]
# Products and derivations.

# %%
u, v = AGFunction.random(ff.cyclic_group(3), rng), AGFunction.random(S3, rng)
print("cross norm:", ff.ag_norm(ff.ag_tensor(u, v)), ff.ag_norm(u) * ff.ag_norm(v))
print(ff.derivations_vanish(S3))
