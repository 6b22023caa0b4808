"""Deterministic shortest-path routing over a GraphInstance.

Tables are laid out per destination: row i of a table describes routes
towards ``destinations[i]``, column u the node a message currently sits on.
"""

from enum import Enum
from typing import Sequence, Tuple

import numpy as np
from scipy.sparse.csgraph import shortest_path

from ..topology import Family
from .graphs import GraphInstance

UNREACHED = np.iinfo(np.int32).max


class RoutingRule(str, Enum):
    # forward to the smallest neighbour id that is one hop closer
    SMALLEST_ID = "smallest-id"
    # fix the lowest differing address digit first (cube and torus only)
    DIMENSION_ORDER = "dimension-order"


def distance_rows(g: GraphInstance, destinations: Sequence[int]) -> np.ndarray:
    """BFS hop counts, shape (len(destinations), N)."""
    dist = shortest_path(g.csr, directed=False, unweighted=True, indices=np.asarray(destinations))
    return dist.reshape(len(destinations), g.node_count).astype(np.int32)


def _smallest_id_hops(g: GraphInstance, dist: np.ndarray) -> np.ndarray:
    n = g.node_count
    table = g.neighbor_table
    padded = np.concatenate([dist, np.full((len(dist), 1), UNREACHED, dtype=np.int32)], axis=1)
    # (rows, N, degree) distances of every neighbour to the destination
    neighbor_dist = padded[:, table]
    closer = neighbor_dist == (dist[:, :, None] - 1)
    slot = closer.argmax(axis=2)
    return table[np.arange(n)[None, :], slot]


def _dimension_order_hops(g: GraphInstance, destinations: np.ndarray) -> np.ndarray:
    spec = g.spec
    u = np.arange(g.node_count, dtype=np.int64)[None, :]
    t = destinations.astype(np.int64)[:, None]
    if spec.family is Family.HYPERCUBE:
        diff = u ^ t
        return u ^ (diff & -diff)

    k, d = spec.k, spec.d
    weights = k ** np.arange(d, dtype=np.int64)
    u_digits = (u[..., None] // weights) % k
    t_digits = (t[..., None] // weights) % k
    dim = (u_digits != t_digits).argmax(axis=2)
    current = np.take_along_axis(np.broadcast_to(u_digits, dim.shape + (d,)), dim[..., None], 2)[..., 0]
    target = np.take_along_axis(np.broadcast_to(t_digits, dim.shape + (d,)), dim[..., None], 2)[..., 0]
    # forward around the ring when that is no longer than going back
    step = np.where(2 * ((target - current) % k) <= k, 1, -1)
    return u + (((current + step) % k) - current) * weights[dim]


def routing_table(
    g: GraphInstance,
    destinations: Sequence[int],
    rule: RoutingRule = RoutingRule.SMALLEST_ID,
) -> Tuple[np.ndarray, np.ndarray]:
    """Distances and next hops towards each destination.

    Returns ``(dist, next_hop)``, both shaped (len(destinations), N); the next
    hop of a destination to itself is -1. Tree paths are unique, so trees
    always use the smallest-id rule.
    """
    destinations = np.asarray(destinations, dtype=np.int64)
    dist = distance_rows(g, destinations)
    if g.edge_count == 0:
        return dist, np.full(dist.shape, -1, dtype=np.int64)

    if rule is RoutingRule.DIMENSION_ORDER and not g.spec.family.is_tree:
        next_hop = _dimension_order_hops(g, destinations)
    else:
        next_hop = _smallest_id_hops(g, dist)
    next_hop = np.where(dist == 0, -1, next_hop)
    return dist, next_hop


def destination_chunks(g: GraphInstance, budget: int = 4_000_000):
    """Split all destinations so each routing table stays near ``budget`` cells."""
    n = g.node_count
    width = max(1, g.neighbor_table.shape[1])
    size = max(1, min(n, budget // (n * width)))
    for start in range(0, n, size):
        yield np.arange(start, min(n, start + size))


def edge_loads(
    g: GraphInstance, rule: RoutingRule = RoutingRule.SMALLEST_ID
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-edge traversal counts over all ordered pairs, with per-destination distance totals.

    For each destination the routes form an in-tree; a node's subtree size is
    the number of sources whose route crosses its outgoing edge. Subtrees are
    accumulated level by level from the farthest nodes inwards.
    Returns ``(loads, distance_sums, eccentricity)``: ``distance_sums[t]`` is the
    total hop count from every node to ``t`` and ``eccentricity[t]`` the largest.
    """
    loads = np.zeros(g.edge_count, dtype=np.int64)
    distance_sums = np.zeros(g.node_count, dtype=np.int64)
    eccentricity = np.zeros(g.node_count, dtype=np.int64)
    for chunk in destination_chunks(g):
        dist, next_hop = routing_table(g, chunk, rule)
        distance_sums[chunk] = dist.sum(axis=1, dtype=np.int64)
        eccentricity[chunk] = dist.max(axis=1)
        subtree = np.ones(dist.shape, dtype=np.int64)
        for level in range(int(dist.max()), 0, -1):
            rows, cols = np.nonzero(dist == level)
            hops = next_hop[rows, cols]
            weight = subtree[rows, cols]
            np.add.at(subtree, (rows, hops), weight)
            np.add.at(loads, g.edge_ids(cols, hops), weight)
    return loads, distance_sums, eccentricity
