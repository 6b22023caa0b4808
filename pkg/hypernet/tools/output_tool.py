import io
import json
import logging
from typing import Iterable, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict

from ..demand import UNIT_TIMES, Bottleneck, ServiceTimes, demand_profile
from ..topology import Family, Number, TopologySpec, structural_metrics

logger = logging.getLogger(__name__)

SPEC_COLUMNS = ("family", "v", "radius", "d", "k")


class OutputRecord(BaseModel):
    """One flat metrics row; field order is the CSV column order."""

    model_config = ConfigDict(frozen=True)

    family: Family
    v: Optional[int] = None
    radius: Optional[int] = None
    d: Optional[int] = None
    k: Optional[Number] = None
    n_total: Number
    diameter: float
    links: Number
    avg_hops: float
    f_link: float
    d_link: float
    d_peer: float
    x_max: float
    x_relative: float
    bottleneck: Bottleneck

    @classmethod
    def from_spec(cls, spec: TopologySpec, times: ServiceTimes = UNIT_TIMES) -> "OutputRecord":
        metrics = structural_metrics(spec)
        profile = demand_profile(spec, times)
        return cls(
            family=spec.family,
            v=spec.v,
            radius=spec.radius,
            d=spec.d,
            k=spec.k,
            n_total=metrics.n_total,
            diameter=metrics.diameter,
            links=metrics.links,
            avg_hops=metrics.avg_hops,
            f_link=profile.f_link,
            d_link=profile.d_link,
            d_peer=profile.d_peer,
            x_max=profile.x_max,
            x_relative=profile.x_relative,
            bottleneck=profile.bottleneck,
        )

    def to_spec(self) -> TopologySpec:
        return TopologySpec(**{name: getattr(self, name) for name in SPEC_COLUMNS})


def _cell(name: str, value) -> str:
    if value is None:
        return ""
    if hasattr(value, "value"):
        return value.value
    if isinstance(value, float):
        # spec parameters must re-parse exactly
        return repr(value) if name in SPEC_COLUMNS else f"{value:.6g}"
    return str(value)


def records_frame(records: Iterable[OutputRecord]) -> pd.DataFrame:
    columns = list(OutputRecord.model_fields)
    rows = [[_cell(name, getattr(r, name)) for name in columns] for r in records]
    return pd.DataFrame(rows, columns=columns, dtype=str)


def write_csv(records: Iterable[OutputRecord]) -> str:
    buffer = io.StringIO()
    records_frame(records).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_json_lines(models: Iterable[BaseModel]) -> str:
    return "".join(json.dumps(m.model_dump(mode="json")) + "\n" for m in models)


def parse_csv_specs(text: str) -> List[TopologySpec]:
    """Re-read the spec columns of a metrics CSV."""
    frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    specs = []
    for row in frame.itertuples(index=False):
        params = {}
        for name in SPEC_COLUMNS[1:]:
            cell = getattr(row, name)
            if cell == "":
                continue
            params[name] = float(cell) if name == "k" and not cell.isdigit() else int(cell)
        specs.append(TopologySpec(family=Family(row.family), **params))
    return specs


def export_edge_counts(result, path) -> None:
    """Write one "u v count" line per edge of a simulation result."""
    with open(path, "w") as file:
        for u, w, count in result.edge_counts:
            file.write(f"{u} {w} {count}\n")
    logger.info(f"wrote {len(result.edge_counts)} edge counts to {path}")
