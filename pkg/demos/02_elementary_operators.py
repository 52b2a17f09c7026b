"""Elementary operators c -> sum_j a_j c b_j on Schatten classes.

Run with ``python3 demos/02_elementary_operators.py``.
"""
# %%
import numpy as np

from oslab import elementary, ostensor
from oslab.tensor import TensorElement, random_tensor

rng = np.random.default_rng(1)

# %% [markdown]
# On column-stacked vectors the map c -> a c b has matrix kron(b^T, a), so the
# Hilbert-Schmidt norm of the operator is the largest singular value of the
# matricization.  It coincides with the twisted spatial norm.

# %%
w = random_tensor(rng, 3, 2, 3)
c = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
lhs = elementary.unvec(elementary.matricize(w) @ elementary.vec(c), 3, 2)
print("matricization matches apply_phi:", np.allclose(lhs, elementary.apply_phi(w, c)))
print(f"phi_2 = {elementary.phi2_norm_exact(w):.12f}")
print(f"twisted = {ostensor.twisted_spatial_norm(w):.12f}")

# %% [markdown]
# The S_inf and S_1 norms are estimated from below by alternating ascent over
# extreme points: partial isometries for S_inf, rank-one matrices for S_1.
# The S_1 value has two routes (trace duality through the flip, and direct
# ascent) which should agree.

# %%
print(f"phi_inf >= {elementary.phi_inf_lower(w):.10f}")
print(f"phi_1   >= {elementary.phi1_lower(w):.10f} (duality)")
print(f"phi_1   >= {elementary.phi1_lower_direct(w):.10f} (direct)")

# %% [markdown]
# The interpolation bounds: phi_inf <= h(w), phi_1 <= h(flip w) and
# phi_2 <= sqrt(h(w) h(flip w)).  For the transpose element w1 the last one
# reads 1 <= n.

# %%
n = 4
E = np.eye(n)
units = [np.outer(E[i], E[j]) for i in range(n) for j in range(n)]
w1 = TensorElement.from_pairs([(u, u) for u in units])
rep = elementary.verify_rainwater(w1, restarts=8)
print(f"w1: phi_inf={rep.phi_inf:.6f} phi_1={rep.phi_1:.6f} phi_2={rep.phi_2:.6f} "
      f"h={rep.h:.6f} h_flip={rep.h_flip:.6f} passed={rep.passed}")

passed = sum(elementary.verify_rainwater(random_tensor(np.random.default_rng(s), 3, 3, 2), restarts=2, seed=s).passed
             for s in range(50))
print(f"random sweep: {passed}/50 pass")
