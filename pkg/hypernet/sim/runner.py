"""Seeded Monte Carlo estimate of link transit frequencies.

Ordered source/destination pairs (source != destination) are drawn i.i.d.
and uniformly with numpy's PCG64 generator, routed with the oracle's
deterministic next-hop table, and counted per edge. Equal configurations give
bit-identical results.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .. import config
from ..demand import UNIT_TIMES, ServiceTimes
from ..errors import GraphSizeError, SpecMismatchError
from ..oracle import ExactMetrics, RoutingRule, build_graph, routing_table
from ..oracle.routing import destination_chunks
from ..oracle.metrics import check_all_pairs_cap
from ..topology import TopologySpec

logger = logging.getLogger(__name__)

# Samples drawn per generator call; part of the stream definition, so fixed.
BATCH = 1 << 20
GENERATOR = "numpy.random.PCG64"


class SimConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    spec: TopologySpec
    pairs: int = Field(ge=1)
    seed: int = Field(default_factory=lambda: config.DEFAULT_SEED, ge=0, le=config.UINT64_MAX)
    times: ServiceTimes = UNIT_TIMES
    rule: RoutingRule = RoutingRule.SMALLEST_ID


class SimResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    spec: TopologySpec
    seed: int
    generator: str
    sampled_pairs: int
    total_traversals: int
    mean_hops_estimate: float
    standard_error: float
    f_link_mean_estimate: float
    f_link_max_estimate: float
    x_max_uniform_estimate: float
    edge_counts: List[Tuple[int, int, int]]


def run(sim: SimConfig) -> SimResult:
    spec = sim.spec
    g = build_graph(spec)
    check_all_pairs_cap(g)
    n = g.node_count
    if n < 2:
        raise GraphSizeError(f"{spec.label} has no pair of distinct nodes to sample")

    dist = np.empty((n, n), dtype=np.int32)
    next_hop = np.empty((n, n), dtype=np.int32)
    for chunk in destination_chunks(g):
        dist[chunk], next_hop[chunk] = routing_table(g, chunk, sim.rule)
    rng = np.random.Generator(np.random.PCG64(sim.seed))
    counts = np.zeros(g.edge_count, dtype=np.int64)
    hop_sum = 0
    hop_squares = 0

    remaining = sim.pairs
    while remaining:
        size = min(BATCH, remaining)
        remaining -= size
        src = rng.integers(0, n, size=size)
        offset = rng.integers(0, n - 1, size=size)
        dst = offset + (offset >= src)

        lengths = dist[dst, src].astype(np.int64)
        hop_sum += int(lengths.sum())
        hop_squares += int((lengths * lengths).sum())

        current = src.copy()
        active = np.nonzero(current != dst)[0]
        while len(active):
            here = current[active]
            there = next_hop[dst[active], here]
            counts += np.bincount(g.edge_ids(here, there), minlength=g.edge_count)
            current[active] = there
            active = active[there != dst[active]]

    pairs = sim.pairs
    variance = (pairs * hop_squares - hop_sum * hop_sum) / (pairs * (pairs - 1)) if pairs > 1 else 0.0
    f_mean = hop_sum / (g.edge_count * pairs)
    d_peer = sim.times.s_peer / n

    result = SimResult(
        spec=spec,
        seed=sim.seed,
        generator=f"{GENERATOR} (numpy {np.__version__})",
        sampled_pairs=pairs,
        total_traversals=int(counts.sum()),
        mean_hops_estimate=hop_sum / pairs,
        standard_error=math.sqrt(max(variance, 0.0) / pairs),
        f_link_mean_estimate=f_mean,
        f_link_max_estimate=int(counts.max()) / pairs,
        x_max_uniform_estimate=1 / max(d_peer, f_mean * sim.times.s_link),
        edge_counts=[(int(u), int(w), int(c)) for (u, w), c in zip(g.edges.tolist(), counts)],
    )
    logger.info(
        f"simulated {pairs} pairs on {spec.label} (seed {sim.seed}): "
        f"mean hops {result.mean_hops_estimate:.6g} +/- {result.standard_error:.2g}"
    )
    return result


class MetricError(BaseModel):
    model_config = ConfigDict(frozen=True)

    metric: str
    estimate: float
    exact: float
    relative_error: float
    within_tolerance: bool


class ConvergenceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    spec: TopologySpec
    sampled_pairs: int
    seed: int
    tolerance: float
    insufficient_samples: bool
    metrics: List[MetricError]

    @property
    def flagged(self) -> bool:
        return self.insufficient_samples or not all(m.within_tolerance for m in self.metrics)


def convergence_report(
    sim: SimConfig,
    exact: ExactMetrics,
    tolerance: Optional[float] = None,
    min_samples: Optional[int] = None,
) -> ConvergenceReport:
    """Relative error of each simulated estimate against the oracle."""
    if exact.spec != sim.spec or exact.rule != sim.rule:
        raise SpecMismatchError(
            f"oracle metrics for {exact.spec.label} ({exact.rule.value}) cannot check "
            f"a simulation of {sim.spec.label} ({sim.rule.value})"
        )
    tolerance = config.SIM_TOLERANCE if tolerance is None else tolerance
    min_samples = config.SIM_MIN_SAMPLES if min_samples is None else min_samples

    result = run(sim)
    pairs_of_values = [
        ("mean_hops", result.mean_hops_estimate, exact.mean_hops_excl_self),
        ("f_link_mean", result.f_link_mean_estimate, exact.mean_edge_transit_frequency),
        ("f_link_max", result.f_link_max_estimate, exact.max_edge_transit_frequency),
    ]
    metrics = []
    for name, estimate, reference in pairs_of_values:
        error = abs(estimate - reference) / reference if reference else abs(estimate)
        metrics.append(
            MetricError(
                metric=name,
                estimate=estimate,
                exact=reference,
                relative_error=error,
                within_tolerance=error <= tolerance,
            )
        )

    insufficient = sim.pairs < min_samples
    if insufficient:
        logger.warning(f"only {sim.pairs} pairs sampled; at least {min_samples} are needed")
    return ConvergenceReport(
        spec=sim.spec,
        sampled_pairs=sim.pairs,
        seed=sim.seed,
        tolerance=tolerance,
        insufficient_samples=insufficient,
        metrics=metrics,
    )
