# coding: utf-8

# # A first community search
#
# A community search asks for a connected piece of the graph around a few
# query vertices. Here the graph is a triangle {0, 1, 2} with a pendant
# vertex 3 hanging off vertex 0, and we query {0, 3}.

# In[1]:

from csoutliers import ProblemSpec, QuerySet, Variant, load_edge_list, solve

G = load_edge_list("0 1\n1 2\n2 0\n0 3\n")
print(G.n, "vertices,", G.m, "edges")


# Ask for every vertex to have degree at least 2 and the diameter as small as
# possible. Vertex 3 has degree 1, so with no outliers allowed there is no
# answer at all.

# In[2]:

spec = ProblemSpec(Variant.MIN_DIAM_MIN_DEG, 2)
print(solve(G, QuerySet({0, 3}, 0), spec))


# Allowing one outlier (k=1) lets the search drop vertex 3 and return the
# triangle, which has diameter 1.

# In[3]:

sol = solve(G, QuerySet({0, 3}, 1), spec)
print(sol.vertices, "diameter", sol.objective, "query hits", sol.query_hits)


# The same instance under the two degree-maximising variants: a diameter cap
# of 1, and every vertex within distance 1 of a kept query vertex.

# In[4]:

for variant in (Variant.MAX_MIN_DEG_DIAM, Variant.MAX_MIN_DEG_DIST):
    sol = solve(G, QuerySet({0, 3}, 1), ProblemSpec(variant, 1))
    print(variant.value, sol.vertices, "min degree", sol.objective)
