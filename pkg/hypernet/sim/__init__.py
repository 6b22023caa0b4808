from .runner import (
    ConvergenceReport,
    MetricError,
    SimConfig,
    SimResult,
    convergence_report,
    run,
)
