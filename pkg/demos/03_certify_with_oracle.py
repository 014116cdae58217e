# coding: utf-8

# # Checking the guarantees against brute force
#
# On graphs with at most 20 vertices the oracle enumerates every vertex subset
# and returns the true optimum. That makes it a referee for the three peeling
# algorithms: the degree-distance peel is exact, the diameter peel is within a
# factor 2, and the degree-diameter peel reaches the optimal degree while
# relaxing the diameter cap by at most a factor 2.

# In[1]:

import random
from collections import Counter

from csoutliers import ProblemSpec, QuerySet, Variant, oracle_solve, solve
from csoutliers.workload import erdos_renyi_graph

rng = random.Random(0)
ratios = Counter()
exact = 0
for i in range(200):
    n = rng.randint(5, 11)
    G = erdos_renyi_graph(n, 0.4, seed=i)
    Q = rng.sample(range(n), 3)
    qs = QuerySet(Q, rng.randint(0, 2))

    spec = ProblemSpec(Variant.MAX_MIN_DEG_DIST, 2)
    exact += solve(G, qs, spec).objective == oracle_solve(G, qs, spec).optimum

    spec = ProblemSpec(Variant.MIN_DIAM_MIN_DEG, 1)
    sol, best = solve(G, qs, spec), oracle_solve(G, qs, spec)
    if best.feasible and best.optimum:
        ratios[round(sol.objective / best.optimum, 2)] += 1

print("exact peel agreed with the oracle on", exact, "of 200 instances")
print("diameter ratio histogram", dict(sorted(ratios.items())))


# The oracle also reports how many optimal subsets exist and keeps up to 64
# of them.

# In[2]:

from csoutliers import Graph

K6 = Graph.from_edges(6, [(u, v) for u in range(6) for v in range(u + 1, 6)])
res = oracle_solve(K6, QuerySet({0}, 0), ProblemSpec(Variant.MIN_DIAM_MIN_DEG, 1))
print("optimum", res.optimum, "with", res.count, "optimal sets, e.g.", res.witnesses[:3])
