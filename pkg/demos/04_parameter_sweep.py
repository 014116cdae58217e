# coding: utf-8

# # A parameter sweep written as CSV
#
# The sweep harness regenerates a query set per repetition (seed + rep),
# solves every (parameter, k) cell and averages the metrics over feasible
# repetitions. Files on disk are the same ones the command line reads, so the
# equivalent shell call is shown at the end.

# In[1]:

import tempfile
from pathlib import Path

from csoutliers.workload import ExperimentConfig, planted_partition_graph, rows_to_csv, run_sweep

work = Path(tempfile.mkdtemp())
G, membership = planted_partition_graph(800, 6000, 10, seed=5)
(work / "graph.txt").write_text("".join(f"{u} {v}\n" for u, v in G.edges()))
(work / "communities.txt").write_text("".join(f"{v} {c}\n" for v, c in enumerate(membership)))

config = ExperimentConfig.from_text(f"""
graph={work / 'graph.txt'}
communities={work / 'communities.txt'}
variant=max-deg-dist
param=n
k=0..5
reps=5
n_same=8
m_other=6
span=3
""")
print(rows_to_csv(run_sweep(config)))


# The same sweep from a shell:
#
#     csoutliers sweep --graph graph.txt --communities communities.txt \
#         --variant max-deg-dist --param n --k 0..5 --reps 5 \
#         --n-same 8 --m-other 6 --span 3
