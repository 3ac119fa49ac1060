"""
Lifting commutes with mutation
==============================

Deleting the Delta rows of a lifted seed recovers the cell seed, before
and after any mutation sequence.  Under the homogeneous convention every
exchange binomial also stays homogeneous in the weight grading.
"""

# %%
from flagcluster import LiftConvention, verify_commutation
from flagcluster.cluster import random_walks
from flagcluster.fixtures import B3_DEGREES, B3_SPEC, SL4_SPEC, b3_lifted
from flagcluster.schubert import schubert_seed
from flagcluster.sl_oracle import realize_lifted_seed, realize_seed

S = schubert_seed(B3_SPEC)
walks = random_walks(S.matrix.mutable, 6, 100, rng=0)
for conv in LiftConvention:
    rep = verify_commutation(S, B3_DEGREES, B3_SPEC.J, conv, walks, variables=False)
    print(f"B3 {conv.value:>11}: {rep.walks} walks, ok={rep.ok}")

# %%
L = b3_lifted("homogeneous")
M = L.mutate_sequence(walks[0], variables=False)
print("walk", walks[0])
print(M.matrix.to_text())
print("degrees", M.degrees)
print("graded", M.is_graded())

# %%
# SL4 with explicit minors as lifts: variables too, not just matrices
T = realize_seed(SL4_SPEC)
L4 = realize_lifted_seed(SL4_SPEC)
rep = verify_commutation(T, None, SL4_SPEC.J, "homogeneous", random_walks(T.matrix.mutable, 3, 10, rng=1), lifted=L4)
print("SL4 with variables:", rep.walks, "walks, ok =", rep.ok)
