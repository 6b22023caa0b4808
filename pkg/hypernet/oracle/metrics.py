import logging
from typing import Optional

from pydantic import BaseModel, ConfigDict

from .. import config
from ..demand import UNIT_TIMES, ServiceTimes
from ..errors import GraphSizeError
from ..topology import TopologySpec
from .graphs import GraphInstance
from .routing import RoutingRule, edge_loads

logger = logging.getLogger(__name__)


class ExactMetrics(BaseModel):
    """Brute-force counterparts of the analytic metrics for one graph."""

    model_config = ConfigDict(frozen=True)

    spec: TopologySpec
    rule: RoutingRule
    node_count: int
    edge_count: int
    true_diameter: int
    mean_hops_incl_self: float
    mean_hops_excl_self: float
    root_depth_mean: float
    max_edge_transit_frequency: float
    mean_edge_transit_frequency: float
    exact_x_max_uniform: float
    exact_x_max_hotspot: float


def check_all_pairs_cap(g: GraphInstance, max_nodes: Optional[int] = None) -> None:
    cap = max_nodes if max_nodes is not None else config.MAX_ALL_PAIRS_NODES
    if g.node_count > cap:
        raise GraphSizeError(
            f"{g.spec.label} has {g.node_count} nodes, over the all-pairs cap of {cap}"
        )


def exact_metrics(
    g: GraphInstance,
    rule: RoutingRule = RoutingRule.SMALLEST_ID,
    times: ServiceTimes = UNIT_TIMES,
    max_nodes: Optional[int] = None,
) -> ExactMetrics:
    """Distances and per-edge transit frequencies from BFS over every node.

    Transit frequencies count traversals over all N(N-1) ordered pairs routed
    by ``rule`` and divide by N(N-1); self-pairs traverse nothing.
    """
    check_all_pairs_cap(g, max_nodes)
    n = g.node_count
    edges = g.edge_count

    loads, distance_sums, eccentricity = edge_loads(g, rule)
    # distances are symmetric, so the row towards node 0 holds the root depths
    total = int(distance_sums.sum())
    diameter = int(eccentricity.max())
    pairs = n * (n - 1)

    if pairs and edges:
        max_f = int(loads.max()) / pairs
        mean_f = total / (edges * pairs)
    else:
        max_f = mean_f = 0.0
    d_peer = times.s_peer / n

    metrics = ExactMetrics(
        spec=g.spec,
        rule=rule,
        node_count=n,
        edge_count=edges,
        true_diameter=diameter,
        mean_hops_incl_self=total / (n * n),
        mean_hops_excl_self=total / pairs if pairs else 0.0,
        root_depth_mean=int(distance_sums[0]) / n,
        max_edge_transit_frequency=max_f,
        mean_edge_transit_frequency=mean_f,
        exact_x_max_uniform=1 / max(d_peer, mean_f * times.s_link),
        exact_x_max_hotspot=1 / max(d_peer, max_f * times.s_link),
    )
    logger.info(
        f"exact metrics for {g.spec.label}: diameter {diameter}, "
        f"mean hops {metrics.mean_hops_excl_self:.6g} (excl. self)"
    )
    return metrics
