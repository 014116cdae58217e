import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csoutliers import Graph, ProblemSpec, QuerySet, Solution, Variant, solve
from csoutliers.workload import (
    COLUMNS,
    ConfigError,
    ExperimentConfig,
    QueryGenParams,
    average_clustering,
    erdos_renyi_graph,
    generate_query,
    load_communities,
    parse_int_list,
    planted_partition_graph,
    rows_to_csv,
    run_sweep,
    run_sweep_on,
    solution_metrics,
)

from .conftest import clique, graphs, path, triangle


class TestLoadCommunities:
    def test_basic(self):
        assert load_communities("0 7\n1 7\n2 9", 3) == [7, 7, 9]

    def test_empty_gives_singletons(self):
        assert load_communities("", 2) == [0, 1]

    def test_duplicate_last_wins_with_warning(self):
        with pytest.warns(UserWarning, match="line 2"):
            assert load_communities("0 4\n0 5\n", 2) == [5, 1]

    def test_comments(self):
        assert load_communities("# v c\n1 3\n", 3) == [0, 3, 2]

    @pytest.mark.parametrize("text, msg", [("0 1\nx 2\n", "line 2"), ("5 1\n", "out of range"), ("0\n", "line 1")])
    def test_errors(self, text, msg):
        with pytest.raises(ValueError, match=msg):
            load_communities(text, 3)

    def test_original_ids(self):
        assert load_communities("10 1\n30 2\n", 3, {10: 0, 20: 1, 30: 2}) == [1, 1, 2]


class TestGenerateQuery:
    def test_cardinality_contract(self):
        G, membership = Graph.from_edges(5, []), [0, 0, 0, 1, 1]
        Q = generate_query(G, membership, QueryGenParams(2, 1, 1, seed=1))
        assert len(Q) == 3
        labels = sorted(membership[v] for v in Q)
        assert labels in ([0, 0, 1], [0, 1, 1])

    def test_span_is_exact(self):
        G = Graph.from_edges(12, [])
        membership = [v // 3 for v in range(12)]
        for seed in range(30):
            Q = generate_query(G, membership, QueryGenParams(0, 3, 3, seed))
            assert len({membership[v] for v in Q}) == 3

    def test_twenty_to_forty_queries(self):
        G, membership = planted_partition_graph(2000, 6000, 40, seed=1)
        for n_same in (0, 7, 20):
            Q = generate_query(G, membership, QueryGenParams(n_same, 20, 20, seed=n_same))
            assert 20 <= len(Q) <= 40
            assert len(Q) == n_same + 20 == len(set(Q))

    @pytest.mark.parametrize(
        "params, msg",
        [(QueryGenParams(4, 0), "no community"), (QueryGenParams(1, 1, 3), "other communities"), (QueryGenParams(1, 9, 1), "hold")],
    )
    def test_unsatisfiable(self, params, msg):
        with pytest.raises(ValueError, match=msg):
            generate_query(Graph.from_edges(5, []), [0, 0, 0, 1, 1], params)

    def test_bad_params(self):
        for args in ((-1, 1), (0, 0), (1, 1, 0)):
            with pytest.raises(ValueError):
                QueryGenParams(*args)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 5), min_size=6, max_size=30), st.integers(0, 3), st.integers(0, 4), st.integers(1, 3), st.integers(0, 999))
    def test_pure_and_sized(self, membership, n_same, m_other, span, seed):
        if n_same + m_other == 0:
            return
        G = Graph.from_edges(len(membership), [])
        params = QueryGenParams(n_same, m_other, span, seed)
        try:
            Q = generate_query(G, membership, params)
        except ValueError:
            return
        assert Q == generate_query(G, membership, params)
        assert len(Q) == len(set(Q)) == n_same + m_other
        if m_other >= span:
            home = {membership[v] for v in Q}
            assert span <= len(home) <= span + 1


class TestMetrics:
    def test_triangle(self):
        sol = Solution(Variant.MIN_DIAM_MIN_DEG, True, (0, 1, 2), 1, 1)
        m = solution_metrics(triangle(), sol, QuerySet({0}, 0))
        assert (m.size, m.diameter, m.min_degree, m.query_hits) == (3, 1, 2, 1)
        assert m.avg_clustering == 1.0 and m.density == 1.0

    def test_path(self):
        sol = Solution(Variant.MIN_DIAM_MIN_DEG, True, (0, 1, 2), 2, 2)
        m = solution_metrics(path(4), sol, QuerySet({0, 2}, 0))
        assert m.avg_clustering == 0.0 and m.diameter == 2
        assert m.density == pytest.approx(2 / 3)

    def test_unfeasible_rejected(self):
        with pytest.raises(ValueError):
            solution_metrics(triangle(), Solution.unfeasible(Variant.MIN_DIAM_MIN_DEG), QuerySet({0}, 0))

    @pytest.mark.parametrize("n", range(3, 8))
    def test_clique_cc_is_one(self, n):
        assert average_clustering(clique(n)) == 1.0

    @given(graphs(max_n=12))
    def test_bounds_and_triangle_free(self, G):
        cc = average_clustering(G)
        assert 0.0 <= cc <= 1.0
        triangle_free = all(not set(G.adj[u]) & set(G.adj[v]) for u, v in G.edges())
        if triangle_free:
            assert cc == 0.0

    def test_known_value(self):
        # triangle plus pendant: local CCs 1/3, 1, 1, 0
        G = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
        assert average_clustering(G) == pytest.approx((1 / 3 + 2) / 4)


def test_parse_int_list():
    assert parse_int_list("0..3,7", 10) == [0, 1, 2, 3, 7]
    assert parse_int_list("n", 12) == [12]
    assert parse_int_list("2..n", 4) == [2, 3, 4]
    with pytest.raises(ConfigError):
        parse_int_list("n")


def test_erdos_renyi_is_seeded():
    assert erdos_renyi_graph(30, 0.2, 5) == erdos_renyi_graph(30, 0.2, 5)
    assert erdos_renyi_graph(30, 0.2, 5) != erdos_renyi_graph(30, 0.2, 6)
    assert erdos_renyi_graph(10, 1.0, 0).m == 45


def test_planted_partition_shape():
    G, membership = planted_partition_graph(300, 1200, 6, seed=2)
    assert (G.n, G.m) == (300, 1200) and len(membership) == 300
    G.check_invariants()
    intra = sum(membership[u] == membership[v] for u, v in G.edges())
    assert intra > 0.7 * G.m


class TestConfig:
    def test_from_text(self):
        c = ExperimentConfig.from_text("graph=g.txt\nvariant=max-deg-dist  # comment\nk=0..5\nparam=n\nreps=3\n")
        assert (c.graph, c.variant, c.ks, c.params, c.reps, c.seed) == ("g.txt", Variant.MAX_MIN_DEG_DIST, "0..5", "n", 3, 42)

    @pytest.mark.parametrize("text", ["graph=g\nvariant=min-diam\n", "graph=g\nparam=1\nvariant=nope\n", "bogus\n", "graph=g\nvariant=min-diam\nparam=1\nreps=x\n", "color=1\n"])
    def test_errors(self, text):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_text(text)


@pytest.fixture
def planted():
    return planted_partition_graph(200, 900, 8, seed=4)


def _config(**kw):
    base = dict(graph="unused", variant=Variant.MAX_MIN_DEG_DIST, params="n", ks="0..5", reps=3, n_same=5, m_other=3, span=2)
    base.update(kw)
    return ExperimentConfig(**base)


def test_sweep_shape(planted):
    G, membership = planted
    rows = run_sweep_on(G, _config(), membership)
    assert [(r["param"], r["k"]) for r in rows] == [(G.n, k) for k in range(6)]
    assert all(set(r) == set(COLUMNS) for r in rows)


def test_single_rep_matches_direct_solve(planted):
    G, membership = planted
    config = _config(reps=1, seed=9, params="3", ks="2")
    (row,) = run_sweep_on(G, config, membership)
    Q = generate_query(G, membership, QueryGenParams(5, 3, 2, seed=9))
    sol = solve(G, QuerySet(Q, 2), ProblemSpec(Variant.MAX_MIN_DEG_DIST, 3))
    m = solution_metrics(G, sol, QuerySet(Q, 2))
    assert row["mean_size"] == m.size and row["mean_min_degree"] == m.min_degree
    assert row["mean_diameter"] == m.diameter and row["mean_cc"] == pytest.approx(m.avg_clustering)
    assert row["unfeasible_count"] == 0


def test_budget_above_query_count_is_reported(planted):
    G, _ = planted
    rows = run_sweep_on(G, _config(ks="1..3", reps=2), fixed_queries=[0, 1])
    by_k = {r["k"]: r for r in rows}
    assert by_k[1]["unfeasible_count"] <= 2 and by_k[1]["note"] == ""
    for k in (2, 3):
        assert by_k[k]["unfeasible_count"] == 2 and by_k[k]["mean_size"] is None
        assert "outside" in by_k[k]["note"]


def test_missing_community_source():
    with pytest.raises(ConfigError):
        run_sweep_on(triangle(), _config())


def test_missing_community_file(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("0 1\n1 2\n")
    with pytest.raises(ConfigError, match="community"):
        run_sweep(_config(graph=str(g), communities=str(tmp_path / "absent.txt")))


def _strip_runtime(csv_text):
    col = COLUMNS.index("mean_runtime_ms")
    return [",".join(c for i, c in enumerate(line.split(",")) if i != col) for line in csv_text.splitlines()]


def test_csv_stable_across_reruns(tmp_path, planted):
    G, membership = planted
    g, c = tmp_path / "g.txt", tmp_path / "c.txt"
    g.write_text("".join(f"{u} {v}\n" for u, v in G.edges()))
    c.write_text("".join(f"{v} {m}\n" for v, m in enumerate(membership)))
    for variant, params in (("max-deg-dist", "2,n"), ("min-diam", "1"), ("max-deg-diam", "3")):
        config = ExperimentConfig.from_text(f"graph={g}\ncommunities={c}\nvariant={variant}\nparam={params}\nk=0..2\nreps=2\nn_same=4\nm_other=2\nspan=2\n")
        first, second = rows_to_csv(run_sweep(config)), rows_to_csv(run_sweep(config))
        assert _strip_runtime(first) == _strip_runtime(second)
        assert first.splitlines()[0] == ",".join(COLUMNS)


def test_sizes_against_k_logged(planted):
    # logged, not gated: mean size against k on planted communities
    G, membership = planted
    rows = run_sweep_on(G, _config(params="2", reps=5, n_same=8, m_other=6, span=4), membership)
    print("k vs mean_size:", [(r["k"], r["mean_size"]) for r in rows])
    assert len(rows) == 6
