"""Tensor norms on B(E) ⊗ B(F): spatial, twisted, Haagerup and projective.

Run with ``python3 demos/01_tensor_norms.py``.
"""
# %%
import numpy as np

from oslab import ostensor
from oslab.tensor import TensorElement, random_tensor, reduce_representation

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# The element w1 = sum_ij E_ij ⊗ E_ij is the standard example where the
# twisted norm and the Haagerup norm come apart: as an operator it is n times
# a rank-one projection, but after transposing the second leg it becomes the
# flip unitary.

# %%
def w1(n):
    E = np.eye(n)
    units = [np.outer(E[i], E[j]) for i in range(n) for j in range(n)]
    return TensorElement.from_pairs([(u, u) for u in units])


for n in range(2, 6):
    w = w1(n)
    print(f"n={n}: spatial={ostensor.spatial_norm(w):.6f}  twisted={ostensor.twisted_spatial_norm(w):.6f}  "
          f"haagerup in [{ostensor.haagerup_lower(w):.6f}, {ostensor.haagerup_upper(w, restarts=4):.6f}]")

# %% [markdown]
# Representations are not unique.  ``reduce_representation`` compresses a
# redundant list of pairs to the minimal length, which is the rank of the
# dimE^2 x dimF^2 coefficient matrix.

# %%
rng = np.random.default_rng(0)
w = random_tensor(rng, 3, 3, 3)
padded = TensorElement.from_pairs(list(w.pairs) + [(w.pairs[0][0], -w.pairs[0][1]), (w.pairs[0][0], w.pairs[0][1])])
r = reduce_representation(padded)
print("padded length", len(padded), "-> reduced length", len(r), "| same tensor:", r.equals(w))

# %% [markdown]
# The Haagerup upper bound is the objective evaluated at the best gauge found,
# so it is valid no matter how well the optimizer does.  The lower bound uses
# the spatial norm and an attained value of the elementary operator on S_inf.
# The projective bracket sandwiches the operator-space projective norm.

# %%
for seed in range(3):
    w = random_tensor(np.random.default_rng(seed), 3, 2, 2)
    hl, hu = ostensor.haagerup_lower(w), ostensor.haagerup_upper(w)
    br = ostensor.projective_bracket(w, restarts=4)
    print(f"seed {seed}: haagerup [{hl:.5f}, {hu:.5f}]  projective [{br.lower:.5f}, {br.upper:.5f}] "
          f"(lower from {br.lower_method})")

# %% [markdown]
# The twisted inclusion chain: twisted <= sqrt(h(w) h(flip w)) <= mean <= ...,
# and twisted <= projective.  Every inequality compares an exact or attained
# value with a certified upper bound.

# %%
rep = ostensor.verify_twisted_chain(w1(4), restarts=4)
for k, v in rep.to_json().items():
    print(f"  {k:32s} {v}")
