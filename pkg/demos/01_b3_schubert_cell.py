"""
The B3 Schubert cell seed and its lift
======================================

Type B3, J = {3}, and the reduced word w = s3 s2 s1 s3 s2 s3 (the tail of
the longest element).  We build the cell seed, read off which variables
are frozen, and lift the seed to the partial flag variety in both sign
conventions for the appended row.
"""

# %%
from flagcluster import LiftConvention, build_Bw, classify_frozen, variable_labels
from flagcluster.cartan import cartan_matrix, symmetrizer
from flagcluster.fixtures import B3_SPEC, b3_lifted

C = cartan_matrix("B3")
print(C.entries)
print("symmetrizer", symmetrizer(C))

# %%
# a position is mutable when its letter occurs again later in the word
mutable, frozen = classify_frozen(B3_SPEC.word)
print("mutable", sorted(mutable), "frozen", sorted(frozen))

B = build_Bw(B3_SPEC)
print(B.to_text(B.display_order()))

# %%
for k, lab in enumerate(variable_labels(B3_SPEC), start=1):
    print(k, lab)

# %%
# one extra frozen row for Delta_{w3,w3}; the two conventions differ by sign
for conv in LiftConvention:
    L = b3_lifted(conv)
    print(conv.value, "extra row", L.extra_rows.tolist()[0], "graded:", L.is_graded())
    print("  column defects", L.column_defects())
