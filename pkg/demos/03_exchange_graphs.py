"""
Exchange graphs and the Laurent phenomenon
==========================================

Finite-type rank-2 seeds close up after 5, 6 or 8 clusters; the Kronecker
matrix never does.  Along the way every cluster variable stays a Laurent
polynomial in the initial cluster.
"""

# %%
from flagcluster import ExtendedExchangeMatrix, enumerate_exchange_graph, formal_seed
from flagcluster.cluster import all_walks, check_laurent
from flagcluster.fixtures import full_flag_spec
from flagcluster.schubert import schubert_seed

for name, B in [("A2", [[0, 1], [-1, 0]]), ("B2", [[0, 1], [-2, 0]]), ("G2", [[0, 1], [-3, 0]]), ("Kronecker", [[0, 2], [-2, 0]])]:
    G = enumerate_exchange_graph(formal_seed(ExtendedExchangeMatrix.from_square(B)), 30)
    print(f"{name:>9}: {len(G)} clusters, complete={G.complete}")

# %%
G = enumerate_exchange_graph(formal_seed(ExtendedExchangeMatrix.from_square([[0, 1], [-1, 0]])), 10)
for v in sorted(G.cluster_variables(), key=str):
    print(v)

# %%
S = schubert_seed(full_flag_spec("A", 3))
rep = check_laurent(S, all_walks(S.matrix.mutable, 6))
print(f"A3 cell: {rep.checked} variables checked, {len(rep.violations)} violations")

# %%
# threads only fan out the mutations; the merge keeps node order fixed
a = enumerate_exchange_graph(S, 200)
b = enumerate_exchange_graph(S, 200, workers=4)
print(len(a), a.complete, [s.cluster_key() for s in a.seeds] == [s.cluster_key() for s in b.seeds])
