import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix

from .. import config
from ..errors import GraphModeError, GraphSizeError
from ..topology import Family, TopologySpec, node_count

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphInstance:
    """Explicit, immutable realisation of an integral topology.

    Node ids are 0-based. Trees are numbered breadth-first from the root or
    center, the hypercube by its d-bit address, the torus by its base-k
    coordinates (digit i has weight k**i).
    """

    spec: TopologySpec
    adjacency: Tuple[Tuple[int, ...], ...]

    @property
    def node_count(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edges(self) -> np.ndarray:
        """(E, 2) array of edges with u < v, sorted ascending."""
        pairs = [(u, w) for u, nbrs in enumerate(self.adjacency) for w in nbrs if u < w]
        return np.array(pairs, dtype=np.int64).reshape(-1, 2)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int64)

    @cached_property
    def edge_keys(self) -> np.ndarray:
        return self.edges[:, 0] * self.node_count + self.edges[:, 1]

    @cached_property
    def csr(self) -> csr_matrix:
        n = self.node_count
        rows = np.repeat(np.arange(n), self.degrees)
        cols = np.fromiter(
            (w for nbrs in self.adjacency for w in nbrs), dtype=np.int64, count=int(self.degrees.sum())
        )
        return csr_matrix((np.ones(len(cols), dtype=np.int8), (rows, cols)), shape=(n, n))

    @cached_property
    def neighbor_table(self) -> np.ndarray:
        """(N, max degree) neighbour ids in ascending order, padded with N."""
        n = self.node_count
        width = int(self.degrees.max()) if n else 0
        table = np.full((n, width), n, dtype=np.int64)
        for u, nbrs in enumerate(self.adjacency):
            table[u, : len(nbrs)] = nbrs
        return table

    def edge_ids(self, u: np.ndarray, w: np.ndarray) -> np.ndarray:
        """Index into ``edges`` of each undirected pair (u[i], w[i])."""
        lo = np.minimum(u, w).astype(np.int64)
        hi = np.maximum(u, w).astype(np.int64)
        return np.searchsorted(self.edge_keys, lo * self.node_count + hi)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(map(tuple, self.edges.tolist()))
        return graph


def _cayley_edges(v: int, n: int) -> Iterator[Tuple[int, int]]:
    # Breadth-first fill: the center takes v children, every later node v - 1.
    child = 1
    parent = 0
    while child < n:
        for _ in range(v if parent == 0 else v - 1):
            if child >= n:
                break
            yield parent, child
            child += 1
        parent += 1


def _hypercube_edges(d: int) -> Iterator[Tuple[int, int]]:
    for u in range(2**d):
        for bit in range(d):
            w = u ^ (1 << bit)
            if u < w:
                yield u, w


def _torus_edges(d: int, k: int) -> Iterator[Tuple[int, int]]:
    for u in range(k**d):
        weight = 1
        for _ in range(d):
            digit = (u // weight) % k
            # the +1 neighbour covers every ring link once; k = 2 repeats are merged by nx
            w = u + (((digit + 1) % k) - digit) * weight
            yield u, w
            weight *= k


def build_graph(spec: TopologySpec, max_nodes: Optional[int] = None) -> GraphInstance:
    if not spec.is_integral:
        raise GraphModeError(f"graph mode needs an integer ring size, got k={spec.k}")
    cap = max_nodes if max_nodes is not None else config.MAX_BUILD_NODES
    n = node_count(spec)
    if n > cap:
        raise GraphSizeError(f"{spec.label} has {n} nodes, over the construction cap of {cap}")

    if spec.family is Family.ROOTED_TREE:
        graph = nx.balanced_tree(spec.v, spec.radius)
    else:
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        if spec.family is Family.CAYLEY_TREE:
            graph.add_edges_from(_cayley_edges(spec.v, n))
        elif spec.family is Family.HYPERCUBE:
            graph.add_edges_from(_hypercube_edges(spec.d))
        else:
            graph.add_edges_from(_torus_edges(spec.d, spec.k))

    adjacency = tuple(tuple(sorted(graph.adj[u])) for u in range(n))
    logger.info(f"built {spec.label} with {n} nodes and {graph.number_of_edges()} edges")
    return GraphInstance(spec=spec, adjacency=adjacency)


def export_edge_list(g: GraphInstance, path) -> None:
    """Write one "u v" line per edge, u < v, ascending."""
    nx.write_edgelist(g.to_networkx(), path, data=False)
