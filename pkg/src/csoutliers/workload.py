"""Experiment workloads: community files, seeded query sets, metrics, sweeps.

Query sets follow the community-based protocol: pick a random community with
enough members, draw ``n_same`` of its vertices, then draw ``m_other``
vertices from the union of ``span`` other communities. The second draw takes
one vertex from each of those communities first (while ``m_other`` allows)
and the remainder uniformly from the union.
"""
from __future__ import annotations

import csv
import io
import logging
import time
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .algorithms import solve
from .graph import Graph, diameter_exact, induced_subgraph, load_edge_list
from .problem import ProblemSpec, QuerySet, Solution, Variant

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


def load_communities(lines: Iterable[str] | str, n: int, index: dict[int, int] | None = None) -> list[int]:
    """Read ``vertex_id community_id`` lines into a membership vector.

    Vertices missing from the file form singleton communities labelled with
    their own id. A repeated vertex keeps its last label (with a warning).
    ``index`` maps file vertex ids to dense ids when the graph was compacted.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    label = list(range(n))
    seen: set[int] = set()
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        parts = s.split()
        try:
            v, c = int(parts[0]), int(parts[1])
        except (ValueError, IndexError):
            raise ValueError(f"line {lineno}: expected 'vertex_id community_id': {s!r}") from None
        if index is not None:
            if v not in index:
                raise ValueError(f"line {lineno}: vertex {v} is not in the graph")
            v = index[v]
        if not 0 <= v < n:
            raise ValueError(f"line {lineno}: vertex {v} out of range for n={n}")
        if c < 0:
            raise ValueError(f"line {lineno}: negative community id {c}")
        if v in seen:
            warnings.warn(f"line {lineno}: vertex {v} reassigned to community {c}", stacklevel=2)
        seen.add(v)
        label[v] = c
    return label


@dataclass(frozen=True)
class QueryGenParams:
    n_same: int
    m_other: int
    span: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.n_same < 0 or self.m_other < 0:
            raise ValueError("n_same and m_other must be non-negative")
        if self.n_same + self.m_other < 1:
            raise ValueError("at least one query vertex must be requested")
        if self.m_other > 0 and self.span < 1:
            raise ValueError("span must be >= 1 when m_other > 0")


def generate_query(G: Graph, membership: Sequence[int], params: QueryGenParams) -> list[int]:
    """Draw a query set; a pure function of its arguments."""
    if len(membership) != G.n:
        raise ValueError("membership vector length differs from graph size")
    rng = np.random.default_rng(params.seed)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(membership):
        groups.setdefault(c, []).append(v)
    labels = sorted(groups)
    home_choices = [c for c in labels if len(groups[c]) >= params.n_same]
    if not home_choices:
        raise ValueError(f"no community has {params.n_same} members")
    home = home_choices[rng.integers(len(home_choices))]
    picked = rng.choice(groups[home], size=params.n_same, replace=False).tolist()
    if params.m_other:
        others = [c for c in labels if c != home]
        if len(others) < params.span:
            raise ValueError(f"need {params.span} other communities, only {len(others)} exist")
        chosen = sorted(rng.choice(len(others), size=params.span, replace=False).tolist())
        pool = sorted(v for i in chosen for v in groups[others[i]])
        if len(pool) < params.m_other:
            raise ValueError(f"the {params.span} chosen communities hold {len(pool)} < {params.m_other} vertices")
        # one vertex per chosen community first, so Q really spans them
        cover = [int(rng.choice(groups[others[i]])) for i in chosen[: params.m_other]]
        rest = sorted(set(pool) - set(cover))
        picked += cover + rng.choice(rest, size=params.m_other - len(cover), replace=False).tolist()
    return sorted(int(v) for v in picked)


@dataclass(frozen=True)
class SolutionMetrics:
    size: int
    diameter: int
    min_degree: int
    query_hits: int
    avg_clustering: float
    density: float
    runtime_ms: float

    def as_dict(self) -> dict:
        return asdict(self)


def average_clustering(H: Graph) -> float:
    """Mean local clustering coefficient; vertices of degree < 2 count as 0."""
    if H.n == 0:
        return 0.0
    nbr = [set(nb) for nb in H.adj]
    total = 0.0
    for v, nb in enumerate(H.adj):
        d = len(nb)
        if d < 2:
            continue
        tri = sum(len(nbr[u] & nbr[v]) for u in nb) // 2
        total += tri / (d * (d - 1) / 2)
    return total / H.n


def solution_metrics(G: Graph, sol: Solution, qs: QuerySet, runtime_ms: float = 0.0) -> SolutionMetrics:
    if not sol.feasible:
        raise ValueError("metrics are undefined for an unfeasible solution")
    H, _ = induced_subgraph(G, sol.vertices)
    size = H.n
    density = 2 * H.m / (size * (size - 1)) if size > 1 else 0.0
    return SolutionMetrics(
        size=size,
        diameter=int(diameter_exact(H)),
        min_degree=min(len(nb) for nb in H.adj),
        query_hits=len(qs.Q.intersection(sol.vertices)),
        avg_clustering=average_clustering(H),
        density=density,
        runtime_ms=runtime_ms,
    )


def erdos_renyi_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with a numpy generator seeded by ``seed``."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def planted_partition_graph(
    n: int, m: int, n_communities: int, intra: float = 0.8, seed: int = 0
) -> tuple[Graph, list[int]]:
    """Random graph with ``m`` edges and planted communities.

    Each edge picks a uniform endpoint ``u``; with probability ``intra`` the
    other endpoint is drawn from ``u``'s community, otherwise from all
    vertices. Returns the graph and its membership vector.
    """
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges requested")
    rng = np.random.default_rng(seed)
    membership = np.sort(rng.integers(n_communities, size=n))
    rng.shuffle(membership)
    groups = [np.flatnonzero(membership == c) for c in range(n_communities)]
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        batch = 2 * (m - len(edges)) + 16
        u = rng.integers(n, size=batch)
        local = rng.random(batch) < intra
        v = rng.integers(n, size=batch)
        for i in np.flatnonzero(local):
            g = groups[membership[u[i]]]
            v[i] = g[rng.integers(g.size)]
        for a, b in zip(u.tolist(), v.tolist()):
            if a == b:
                continue
            e = (a, b) if a < b else (b, a)
            if e not in edges:
                edges.add(e)
                if len(edges) == m:
                    break
    return Graph.from_edges(n, sorted(edges)), membership.tolist()


def parse_int_list(text: str, n: int | None = None) -> list[int]:
    """Parse ``"0..5"``, ``"1,2,4"`` or a mix; ``"n"`` stands for ``n``."""
    out: list[int] = []

    def one(tok: str) -> int:
        tok = tok.strip()
        if tok == "n":
            if n is None:
                raise ConfigError("'n' used before the graph size is known")
            return n
        return int(tok)

    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(one(lo), one(hi) + 1))
        else:
            out.append(one(part))
    return out


@dataclass
class ExperimentConfig:
    """One sweep over (parameter, k, repetition) cells.

    Query sets come from ``queries`` (fixed, one id per line, file ids) or
    are generated from ``communities`` with the ``n_same/m_other/span``
    protocol; ``params`` may contain ``"n"`` for the graph size.
    """

    graph: str
    variant: Variant
    params: str
    ks: str = "0"
    reps: int = 10
    seed: int = 42
    communities: str | None = None
    queries: str | None = None
    n_same: int = 10
    m_other: int = 10
    span: int = 10
    all_starts: bool = False
    use_pruning: bool = True
    out: str | None = None

    _KEYS = {
        "graph": str, "variant": Variant, "param": str, "params": str, "k": str, "ks": str,
        "reps": int, "seed": int, "communities": str, "queries": str, "n_same": int,
        "m_other": int, "span": int, "out": str,
    }

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        """Parse flat ``key=value`` lines (``#`` comments allowed)."""
        values: dict = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if "=" not in s:
                raise ConfigError(f"line {lineno}: expected key=value")
            key, val = (x.strip() for x in s.split("=", 1))
            values[key] = val
        return cls.from_mapping(values)

    @classmethod
    def from_mapping(cls, values: dict) -> "ExperimentConfig":
        kw: dict = {}
        for key, val in values.items():
            if val is None:
                continue
            if key in ("all_starts", "use_pruning"):
                kw[key] = val if isinstance(val, bool) else str(val).lower() in ("1", "true", "yes")
                continue
            if key == "prune":
                kw["use_pruning"] = str(val).lower() in ("1", "true", "yes")
                continue
            if key not in cls._KEYS:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                conv = cls._KEYS[key](val)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {val!r}") from exc
            kw[{"param": "params", "k": "ks"}.get(key, key)] = conv
        for req in ("graph", "variant", "params"):
            if req not in kw:
                raise ConfigError(f"missing config key {req!r}")
        return cls(**kw)


COLUMNS = (
    "variant", "param", "k", "reps", "mean_size", "mean_diameter", "mean_min_degree",
    "mean_query_hits", "mean_cc", "mean_runtime_ms", "unfeasible_count", "mean_density", "note",
)


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"


def run_sweep_on(
    G: Graph,
    config: ExperimentConfig,
    membership: Sequence[int] | None = None,
    fixed_queries: Sequence[int] | None = None,
) -> list[dict]:
    """Run the sweep on an already loaded graph; one dict per (param, k) cell."""
    if fixed_queries is None and membership is None:
        raise ConfigError("query generation needs a community file (or give a fixed query file)")
    params = parse_int_list(config.params, G.n)
    ks = parse_int_list(config.ks, G.n)
    queries = []
    for rep in range(config.reps):
        if fixed_queries is not None:
            queries.append(sorted(fixed_queries))
        else:
            p = QueryGenParams(config.n_same, config.m_other, config.span, config.seed + rep)
            queries.append(generate_query(G, membership, p))
    rows = []
    for param in params:
        spec = ProblemSpec(config.variant, param)
        for k in ks:
            metrics: list[SolutionMetrics] = []
            runtimes: list[float] = []
            unfeasible = 0
            notes = set()
            for Q in queries:
                if not 0 <= k < len(Q):
                    unfeasible += 1
                    notes.add(f"k={k} outside 0..|Q|-1={len(Q) - 1}")
                    continue
                qs = QuerySet(Q, k)
                t0 = time.perf_counter()
                sol = solve(G, qs, spec, all_starts=config.all_starts, use_pruning=config.use_pruning)
                ms = (time.perf_counter() - t0) * 1000
                runtimes.append(ms)
                if not sol.feasible:
                    unfeasible += 1
                    continue
                metrics.append(solution_metrics(G, sol, qs, ms))

            def mean(attr: str) -> float | None:
                return float(np.mean([getattr(x, attr) for x in metrics])) if metrics else None

            rows.append({
                "variant": spec.variant.value,
                "param": param,
                "k": k,
                "reps": config.reps,
                "mean_size": mean("size"),
                "mean_diameter": mean("diameter"),
                "mean_min_degree": mean("min_degree"),
                "mean_query_hits": mean("query_hits"),
                "mean_cc": mean("avg_clustering"),
                "mean_runtime_ms": float(np.mean(runtimes)) if runtimes else None,
                "unfeasible_count": unfeasible,
                "mean_density": mean("density"),
                "note": "; ".join(sorted(notes)),
            })
            log.info("cell param=%s k=%s done: %d feasible", param, k, len(metrics))
    return rows


def read_query_file(lines: Iterable[str] | str) -> list[int]:
    """One vertex id per line; blank and ``#`` lines ignored."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    out = []
    for lineno, line in enumerate(lines, start=1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        try:
            out.append(int(s))
        except ValueError:
            raise ValueError(f"line {lineno}: expected a vertex id, got {s!r}") from None
    return out


def _read_config_file(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {what} file {path!r}: {exc.strerror}") from exc


def run_sweep(config: ExperimentConfig) -> list[dict]:
    """Load the files named in ``config`` and run the sweep."""
    G = load_edge_list(Path(config.graph).read_text(encoding="utf-8"))
    index = G.index_of()
    membership = fixed = None
    if config.communities:
        membership = load_communities(_read_config_file(config.communities, "community"), G.n, index)
    if config.queries:
        ids = read_query_file(_read_config_file(config.queries, "query"))
        missing = [q for q in ids if q not in index]
        if missing:
            raise ConfigError(f"query vertices {missing} are not in the graph")
        fixed = [index[q] for q in ids]
    return run_sweep_on(G, config, membership, fixed)


def rows_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow([_fmt(row[c]) if c.startswith("mean_") else row[c] for c in COLUMNS])
    return buf.getvalue()
