import networkx as nx
import numpy as np
import pytest

from hypernet import config
from hypernet.errors import GraphModeError, GraphSizeError
from hypernet.oracle import (
    RoutingRule,
    Status,
    build_graph,
    edge_loads,
    exact_metrics,
    export_edge_list,
    routing_table,
    verify_spec,
)
from hypernet.oracle.routing import distance_rows
from hypernet.topology import (
    Family,
    TopologySpec,
    average_hops,
    level_population,
    link_count,
    node_count,
)


def test_graph_matches_closed_forms(oracle_spec):
    g = build_graph(oracle_spec)
    assert g.node_count == node_count(oracle_spec)
    # handshake law
    assert int(g.degrees.sum()) == 2 * g.edge_count
    if oracle_spec.family.is_tree:
        assert g.edge_count == link_count(oracle_spec) - 1
    elif oracle_spec.family is Family.HYPERTORUS and oracle_spec.k == 2:
        assert 2 * g.edge_count == link_count(oracle_spec)
    else:
        assert g.edge_count == link_count(oracle_spec)


def test_graphs_are_connected(oracle_spec):
    assert nx.is_connected(build_graph(oracle_spec).to_networkx())


def test_verify_spec_never_fails(oracle_spec):
    report = verify_spec(oracle_spec)
    assert not report.failed, [c for c in report.comparisons if c.status is Status.FAIL]


def test_degree_laws(oracle_spec):
    spec = oracle_spec
    degrees = build_graph(spec).degrees
    if spec.family is Family.HYPERCUBE:
        expected = {spec.d}
    elif spec.family is Family.HYPERTORUS:
        expected = {spec.d if spec.k == 2 else 2 * spec.d}
    elif spec.radius == 0:
        expected = {0}
    elif spec.family is Family.ROOTED_TREE and spec.radius >= 2:
        expected = {1, spec.v, spec.v + 1}
    else:
        expected = {1, spec.v}
    assert set(degrees.tolist()) == expected
    if spec.family.is_tree and spec.radius >= 1:
        assert degrees[0] == spec.v
        assert int((degrees == 1).sum()) == level_population(spec, spec.radius)


@pytest.mark.parametrize("d", range(1, 9))
def test_cube_distance_is_hamming_distance(d):
    g = build_graph(TopologySpec.hypercube(d))
    nodes = np.arange(g.node_count)
    dist = distance_rows(g, nodes)
    xor = nodes[:, None] ^ nodes[None, :]
    popcount = sum((xor >> bit) & 1 for bit in range(d))
    assert np.array_equal(dist, popcount)


@pytest.mark.parametrize("d", range(1, 11))
def test_binary_torus_is_the_hypercube(d):
    torus = build_graph(TopologySpec.hypertorus(d, 2))
    cube = build_graph(TopologySpec.hypercube(d))
    assert np.array_equal(torus.edges, cube.edges)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_binary_torus_isomorphic_to_networkx_hypercube(d):
    torus = build_graph(TopologySpec.hypertorus(d, 2)).to_networkx()
    assert nx.is_isomorphic(torus, nx.hypercube_graph(d))


def test_edges_sorted_and_oriented():
    edges = build_graph(TopologySpec.hypertorus(2, 5)).edges
    assert (edges[:, 0] < edges[:, 1]).all()
    keys = edges[:, 0] * 25 + edges[:, 1]
    assert (np.diff(keys) > 0).all()


def test_fractional_torus_cannot_be_built():
    with pytest.raises(GraphModeError):
        build_graph(TopologySpec.hypertorus(3, 4.5))


def test_construction_cap():
    with pytest.raises(GraphSizeError):
        build_graph(TopologySpec.hypercube(10), max_nodes=100)


def test_routing_table_moves_one_hop_closer():
    g = build_graph(TopologySpec.hypertorus(2, 5))
    targets = np.arange(g.node_count)
    for rule in RoutingRule:
        dist, next_hop = routing_table(g, targets, rule)
        assert (np.diag(next_hop) == -1).all()
        rows, cols = np.nonzero(dist > 0)
        hops = next_hop[rows, cols]
        assert (dist[rows, hops] == dist[rows, cols] - 1).all()
        # every hop follows an edge
        assert (g.edge_ids(cols, hops) < g.edge_count).all()
        assert np.array_equal(g.edges[g.edge_ids(cols, hops)].min(axis=1), np.minimum(cols, hops))


def test_smallest_id_forwarding():
    g = build_graph(TopologySpec.hypercube(2))
    _, next_hop = routing_table(g, [3])
    # from 0 both 1 and 2 are one hop closer to 3
    assert next_hop[0, 0] == 1


def test_star_transit_frequency(star):
    metrics = exact_metrics(build_graph(star))
    assert metrics.max_edge_transit_frequency == 0.5
    assert metrics.mean_edge_transit_frequency == 0.5
    loads, _, _ = edge_loads(build_graph(star))
    assert loads.tolist() == [6, 6, 6]


def test_tree_links_near_the_root_are_hotspots(small_spec):
    if not small_spec.family.is_tree or small_spec.radius < 2:
        pytest.skip("needs a tree of radius two or more")
    metrics = exact_metrics(build_graph(small_spec))
    assert metrics.max_edge_transit_frequency > metrics.mean_edge_transit_frequency


def test_smallest_id_loads_are_uneven_on_the_square():
    g = build_graph(TopologySpec.hypercube(2))
    loads, _, _ = edge_loads(g, RoutingRule.SMALLEST_ID)
    by_edge = dict(zip(map(tuple, g.edges.tolist()), loads.tolist()))
    assert by_edge == {(0, 1): 6, (0, 2): 4, (1, 3): 4, (2, 3): 2}


@pytest.mark.parametrize(
    "spec",
    [
        TopologySpec.hypercube(2),
        TopologySpec.hypercube(6),
        TopologySpec.hypertorus(2, 4),
        TopologySpec.hypertorus(2, 5),
        TopologySpec.hypertorus(3, 3),
    ],
)
def test_dimension_order_loads_are_uniform(spec):
    metrics = exact_metrics(build_graph(spec), RoutingRule.DIMENSION_ORDER)
    assert metrics.max_edge_transit_frequency == pytest.approx(metrics.mean_edge_transit_frequency)


def test_total_load_equals_total_distance():
    g = build_graph(TopologySpec.cayley_tree(3, 4))
    loads, distance_sums, _ = edge_loads(g)
    assert int(loads.sum()) == int(distance_sums.sum())


@pytest.mark.parametrize("d", range(1, 11))
def test_cube_average_hops_exact(d):
    spec = TopologySpec.hypercube(d)
    metrics = exact_metrics(build_graph(spec))
    assert metrics.mean_hops_incl_self == average_hops(spec)
    assert metrics.true_diameter == d


@pytest.mark.parametrize("d, k", [(1, 4), (2, 6), (3, 8), (2, 3), (3, 5), (1, 7)])
def test_torus_average_hops_exact(d, k):
    spec = TopologySpec.hypertorus(d, k)
    assert exact_metrics(build_graph(spec)).mean_hops_incl_self == average_hops(spec)


def test_exact_throughput():
    metrics = exact_metrics(build_graph(TopologySpec.hypercube(4)), RoutingRule.DIMENSION_ORDER)
    # mean distance excluding self-pairs is 32/15, over 32 links
    assert metrics.mean_hops_excl_self == pytest.approx(32 / 15)
    assert metrics.exact_x_max_uniform == pytest.approx(1 / (32 / 15 / 32))
    assert metrics.exact_x_max_hotspot == pytest.approx(metrics.exact_x_max_uniform)


def test_all_pairs_cap():
    with pytest.raises(GraphSizeError):
        exact_metrics(build_graph(TopologySpec.hypercube(8)), max_nodes=100)


def test_verify_tree_documents_link_off_by_one():
    report = verify_spec(TopologySpec.rooted_tree(4, 5))
    statuses = {c.metric: c.status for c in report.comparisons}
    assert statuses["links"] is Status.DOCUMENTED
    assert statuses["n_total"] is Status.PASS
    assert statuses["avg_hops"] is Status.PASS
    assert statuses["diameter"] is Status.PASS
    assert not report.failed


def test_verify_torus_documents_diameter():
    report = verify_spec(TopologySpec.hypertorus(2, 4))
    diameter = next(c for c in report.comparisons if c.metric == "diameter")
    assert diameter.status is Status.DOCUMENTED
    assert diameter.exact == 4
    assert diameter.analytic == 2.0
    assert "ratio 2" in diameter.message


def test_verify_binary_torus_documents_links():
    report = verify_spec(TopologySpec.hypertorus(3, 2))
    links = next(c for c in report.comparisons if c.metric == "links")
    assert links.status is Status.DOCUMENTED
    assert (links.analytic, links.exact) == (24, 12)


def test_verify_cube_passes_everything():
    report = verify_spec(TopologySpec.hypercube(6))
    assert all(c.status is Status.PASS for c in report.comparisons)
    assert report.exact is not None


def test_verify_large_tree_without_all_pairs(monkeypatch):
    monkeypatch.setattr(config, "MAX_ALL_PAIRS_NODES", 100)
    report = verify_spec(TopologySpec.rooted_tree(2, 8))
    assert report.exact is None
    assert not report.failed
    diameter = next(c for c in report.comparisons if c.metric == "diameter")
    assert diameter.exact == 16


def test_verify_large_cube_needs_all_pairs(monkeypatch):
    monkeypatch.setattr(config, "MAX_ALL_PAIRS_NODES", 100)
    with pytest.raises(GraphSizeError):
        verify_spec(TopologySpec.hypercube(8))


def test_single_node_tree():
    report = verify_spec(TopologySpec.cayley_tree(3, 0))
    assert not report.failed
    assert report.exact.edge_count == 0


def test_export_edge_list(tmp_path, cube3):
    path = tmp_path / "cube.edges"
    export_edge_list(build_graph(cube3), path)
    lines = path.read_text().splitlines()
    assert len(lines) == 12
    assert lines[0] == "0 1"
