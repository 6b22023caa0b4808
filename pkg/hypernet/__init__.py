from .demand import (
    Bottleneck,
    DemandProfile,
    RankingRow,
    ServiceTimes,
    SweepSeries,
    demand_profile,
    figure_series,
    rank,
    solve_horizon,
    sweep,
)
from .topology import (
    Family,
    StructuralMetrics,
    TopologySpec,
    average_hops,
    diameter,
    internal_path_length,
    level_population,
    link_count,
    node_count,
    structural_metrics,
)
