from .graphs import GraphInstance, build_graph, export_edge_list
from .metrics import ExactMetrics, exact_metrics
from .routing import RoutingRule, edge_loads, routing_table
from .verify import Comparison, Status, VerificationReport, verify_spec
