# coding: utf-8

# # Outliers on a graph with planted communities
#
# Query vertices drawn from several communities rarely sit inside one tight
# subgraph. This walk-through plants 8 communities, draws a query set that
# mixes one home community with a few strangers, and watches what the outlier
# budget k buys.

# In[1]:

from csoutliers import QuerySet, solve_max_min_deg_dist, solve_min_diam
from csoutliers.workload import QueryGenParams, generate_query, planted_partition_graph, solution_metrics

G, membership = planted_partition_graph(600, 4000, 8, intra=0.85, seed=11)
Q = generate_query(G, membership, QueryGenParams(n_same=6, m_other=4, span=3, seed=2))
print("query vertices", Q)
print("their communities", [membership[q] for q in Q])


# With d_max = n the distance constraint is void and the exact peel returns
# the densest-in-min-degree connected piece that keeps |Q| - k query vertices.
# As k grows the answer can only get better.

# In[2]:

for k in range(0, 6):
    qs = QuerySet(Q, k)
    sol = solve_max_min_deg_dist(G, qs, G.n)
    m = solution_metrics(G, sol, qs)
    print(f"k={k}: min degree {m.min_degree:2d}  size {m.size:3d}  hits {m.query_hits:2d}  CC {m.avg_clustering:.3f}")


# The diameter variant tells the same story from the other side: each outlier
# may shrink the diameter of the best community.

# In[3]:

for k in range(0, 6):
    qs = QuerySet(Q, k)
    sol = solve_min_diam(G, qs, 3)
    print(f"k={k}: diameter {sol.objective}  size {len(sol.vertices)}  hits {sol.query_hits}")
