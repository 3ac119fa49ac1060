"""
SL3: flag minors, exchange identities and the lifted Pluecker relation
======================================================================

In type A every cell variable is an honest minor of a unipotent matrix,
so exchange relations can be checked as polynomial identities.
"""

# %%
from flagcluster import mutate_seed
from flagcluster.fixtures import SL3_SPEC
from flagcluster.sl_oracle import (
    a_degree,
    generic_matrix,
    lambda_of,
    lusztig_point,
    realize_lifted_seed,
    realize_seed,
    verify_exchange_identities,
    verify_lifted_identities,
)

x = lusztig_point(3, (1, 2, 1))
print("Lusztig point n12 =", x[1, 2], " n13 =", x[1, 3], " n23 =", x[2, 3])

# %%
S = realize_seed(SL3_SPEC)
print("cell variables", [str(v) for v in S.variables])
print("after mu_1    ", str(mutate_seed(S, 1)[1]))
print(verify_exchange_identities(S).ok)

# %%
# degrees a_j come from iterating the derivation e_j^dagger until it vanishes
for v in S.variables:
    print(f"{str(v):>14}  a_1={a_degree(1, v)}  a_2={a_degree(2, v)}  lambda={lambda_of(v, {1, 2}, 2)}")

# %%
g = generic_matrix(3)
expected = {1: g.minor((1, 2), (1, 3))}
for conv in ("homogeneous", "paper"):
    rep = verify_lifted_identities(realize_lifted_seed(SL3_SPEC, conv), expected)
    print(conv, "lifted identity holds:", rep.ok)
