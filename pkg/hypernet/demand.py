"""Service demands, bottleneck throughput and relative bandwidth.

Links and peers are the two service centres. With uniform routing a query
visits a given link H/L times and a given peer 1/N times; at saturation the
busiest centre caps throughput at 1 / D_max (Little's law with U = 1).
"""

import logging
import math
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from . import config
from .errors import TopologyOverflowError, UnsupportedFamilyError
from .tools.fetch_preset_tool import get_preset
from .topology import (
    Family,
    Number,
    TopologySpec,
    average_hops,
    connections_per_peer,
    link_count,
    node_count,
)

logger = logging.getLogger(__name__)


class ServiceTimes(BaseModel):
    model_config = ConfigDict(frozen=True)

    s_link: float = Field(default=1.0, gt=0)
    s_peer: float = Field(default=1.0, gt=0)


UNIT_TIMES = ServiceTimes()


class Bottleneck(str, Enum):
    LINK = "link"
    PEER = "peer"
    BALANCED = "balanced"


class DemandProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    f_link: float
    d_link: float
    f_peer: float
    d_peer: float
    x_max: float
    x_relative: float
    bottleneck: Bottleneck


def demand_profile(spec: TopologySpec, times: ServiceTimes = UNIT_TIMES) -> DemandProfile:
    n = node_count(spec)
    f_link = average_hops(spec) / link_count(spec)
    d_link = f_link * times.s_link
    f_peer = 1 / n
    d_peer = times.s_peer / n
    d_max = max(d_link, d_peer)
    x_max = 1 / d_max

    if abs(d_link - d_peer) <= config.BALANCE_TOLERANCE * d_max:
        bottleneck = Bottleneck.BALANCED
    elif d_link > d_peer:
        bottleneck = Bottleneck.LINK
    else:
        bottleneck = Bottleneck.PEER

    return DemandProfile(
        f_link=f_link,
        d_link=d_link,
        f_peer=f_peer,
        d_peer=d_peer,
        x_max=x_max,
        # per-peer form keeps a peer-bound result at exactly 1 / s_peer
        x_relative=1 / max(n * d_link, times.s_peer),
        bottleneck=bottleneck,
    )


def solve_horizon(
    family: Family,
    target_peers: float,
    *,
    v: Optional[int] = None,
    d: Optional[int] = None,
    integral: bool = False,
) -> TopologySpec:
    """Smallest topology of the family whose peer count reaches ``target_peers``.

    Trees grow the radius with ``v`` fixed, the cube grows ``d``, and the torus
    keeps ``d`` fixed and solves for the ring size: the real root
    ``target_peers ** (1/d)`` in analytic mode, the smallest integer otherwise.
    """
    if target_peers < 1:
        raise ValueError("target_peers must be >= 1")
    if target_peers > config.UINT64_MAX:
        raise TopologyOverflowError(f"no topology reaches {target_peers:g} peers")

    if family.is_tree:
        radius = 0
        while True:
            spec = TopologySpec(family=family, v=v, radius=radius)
            if node_count(spec) >= target_peers:
                return spec
            radius += 1

    if family is Family.HYPERCUBE:
        dim = 1
        while node_count(TopologySpec.hypercube(dim)) < target_peers:
            dim += 1
        return TopologySpec.hypercube(dim)

    if d is None:
        raise ValueError("torus horizon needs a fixed dimension d")
    if not integral:
        return TopologySpec.hypertorus(d, max(2.0, target_peers ** (1.0 / d)))
    k = max(2, math.ceil(target_peers ** (1.0 / d)))
    # correct the float root by exact integer powers
    while k > 2 and (k - 1) ** d >= target_peers:
        k -= 1
    while k**d < target_peers:
        k += 1
    spec = TopologySpec.hypertorus(d, k)
    node_count(spec)
    return spec


# --- Ranking -----------------------------------------------------------------


class RankingRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    connections: int
    hops_to_horizon: int
    peers_in_horizon: Number
    relative_bandwidth_pct: float
    note: str = ""


def hop_label(spec: TopologySpec) -> int:
    """Hops-to-horizon as the published ranking labels it.

    Trees are labelled R + 1, the cube d/2 and the torus ceil(d*k/4). The
    label is presentation only and never feeds the model.
    """
    if spec.family.is_tree:
        return spec.radius + 1
    if spec.family is Family.HYPERCUBE:
        return math.ceil(spec.d / 2)
    return math.ceil(spec.d * spec.k / 4 - 1e-9)


def round_half_away(value: float) -> int:
    return int(Decimal(repr(value)).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def preset_specs(name: str) -> List[Tuple[TopologySpec, dict]]:
    """Specs and published values of a shipped ranking table."""
    entries = []
    for row in get_preset(name)["rows"]:
        params = dict(row["spec"])
        family = Family(params.pop("family"))
        if family is Family.HYPERTORUS:
            dim = params["d"]
            spec = TopologySpec.hypertorus(dim, 2.0 ** (params["log2_peers"] / dim))
        else:
            spec = TopologySpec(family=family, **params)
        entries.append((spec, row["published"]))
    return entries


def _notes(row: RankingRow, published: dict) -> str:
    notes = []
    published_pct = published["relative_bandwidth_pct"]
    if abs(row.relative_bandwidth_pct - published_pct) > config.PUBLISHED_TOLERANCE_PCT:
        notes.append(
            f"computed {row.relative_bandwidth_pct:.1f}% vs published {published_pct:g}%"
        )
    millions = round(row.peers_in_horizon / 1e6, 1)
    if millions != published["peers_millions"]:
        notes.append(
            f"peers in horizon {row.peers_in_horizon:,.0f} ({millions:g}e6) "
            f"vs published {published['peers_millions']:g}e6"
        )
    if row.hops_to_horizon != published["hops_to_horizon"]:
        notes.append(
            f"hops label {row.hops_to_horizon} vs published {published['hops_to_horizon']}"
        )
    return "; ".join(notes)


def rank(
    specs: Union[str, Sequence[TopologySpec]],
    times: ServiceTimes = UNIT_TIMES,
) -> List[RankingRow]:
    """Rank topologies by relative bandwidth, best first.

    ``specs`` is either a preset name (``"table3"``) or an explicit list.
    Preset rows are compared against their published values and annotated
    where they disagree.
    """
    if isinstance(specs, str):
        entries = preset_specs(specs)
    else:
        entries = [(spec, None) for spec in specs]

    rows = []
    for spec, published in entries:
        profile = demand_profile(spec, times)
        row = RankingRow(
            label=spec.label,
            connections=connections_per_peer(spec),
            hops_to_horizon=hop_label(spec),
            peers_in_horizon=node_count(spec),
            relative_bandwidth_pct=100 * profile.x_relative,
        )
        if published is not None:
            note = _notes(row, published)
            if note:
                logger.warning(f"{row.label}: {note}")
                row = row.model_copy(update={"note": note})
        rows.append(row)

    rows.sort(key=lambda r: (-r.relative_bandwidth_pct, r.connections, r.label))
    return rows


def _peer_count(value: Number) -> Union[int, str]:
    """Integral peer counts as integers; fractional-k tori land within rounding of one."""
    nearest = round(value)
    if math.isclose(value, nearest, rel_tol=1e-9):
        return int(nearest)
    return f"{value:.6g}"


def ranking_frame(rows: Iterable[RankingRow], rounded: bool = True) -> pd.DataFrame:
    rows = list(rows)
    frame = pd.DataFrame(
        [row.model_dump() for row in rows],
        columns=list(RankingRow.model_fields),
    )
    frame["peers_in_horizon"] = pd.Series([_peer_count(r.peers_in_horizon) for r in rows], dtype=object)
    if rounded and not frame.empty:
        frame["relative_bandwidth_pct"] = frame["relative_bandwidth_pct"].map(round_half_away)
    return frame


# --- Sweeps ------------------------------------------------------------------


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    size: Number
    n_total: Number
    x_relative: float


class SweepSeries(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    family: Family
    parameter: str
    points: List[SweepPoint]
    truncated: bool = False

    def to_frame(self) -> pd.DataFrame:
        # object columns keep integer sizes and counts intact next to a fractional k
        return pd.DataFrame(
            {
                self.parameter: pd.Series([p.size for p in self.points], dtype=object),
                "n_total": pd.Series([p.n_total for p in self.points], dtype=object),
                "x_relative": pd.Series([p.x_relative for p in self.points], dtype=float),
            }
        )


def _sweep_specs(
    family: Family, v: Optional[int], d: Optional[int], k: Optional[Number], sizes: Iterable[int]
) -> Tuple[str, str, Iterator[TopologySpec]]:
    if family.is_tree:
        label = TopologySpec(family=family, v=v, radius=0).label
        return label, "radius", (TopologySpec(family=family, v=v, radius=s) for s in sizes)
    if family is Family.HYPERCUBE:
        return "Hypercube", "d", (TopologySpec.hypercube(s) for s in sizes)
    if d is not None and k is None:
        return f"{d}-Torus", "k", (TopologySpec.hypertorus(d, s) for s in sizes)
    if k is not None and d is None:
        return f"Torus k={k:g}", "d", (TopologySpec.hypertorus(s, k) for s in sizes)
    raise UnsupportedFamilyError("a torus sweep fixes exactly one of d and k")


def sweep(
    family: Family,
    start: int,
    stop: Optional[int] = None,
    *,
    v: Optional[int] = None,
    d: Optional[int] = None,
    k: Optional[Number] = None,
    times: ServiceTimes = UNIT_TIMES,
    peer_limit: Optional[float] = None,
) -> SweepSeries:
    """Relative bandwidth over an integral range of the family's size parameter.

    The series stops early, with ``truncated`` set, at the first size whose
    counts overflow. With ``peer_limit`` the series also ends (untruncated)
    before the first size whose N exceeds the limit; ``stop`` may then be None.
    """
    if stop is None and peer_limit is None:
        raise ValueError("sweep needs a stop value or a peer limit")
    if stop is not None and stop < start:
        raise ValueError(f"empty sweep range {start}..{stop}")

    sizes = range(start, stop + 1) if stop is not None else _count_from(start)
    label, parameter, specs = _sweep_specs(family, v, d, k, sizes)
    points = []
    truncated = False
    for spec in specs:
        try:
            n = node_count(spec)
            if peer_limit is not None and n > peer_limit:
                break
            profile = demand_profile(spec, times)
        except TopologyOverflowError as e:
            logger.warning(f"sweep truncated at {parameter}={getattr(spec, parameter)}: {e}")
            truncated = True
            break
        points.append(
            SweepPoint(size=getattr(spec, parameter), n_total=n, x_relative=profile.x_relative)
        )

    return SweepSeries(
        label=label,
        family=family,
        parameter=parameter,
        points=points,
        truncated=truncated,
    )


def _count_from(start: int) -> Iterator[int]:
    size = start
    while True:
        yield size
        size += 1


FIGURE_PEER_LIMIT = 2**21

# Curves of the three published comparisons: (family, fixed params, first size).
FIGURES = {
    "trees": [
        (Family.ROOTED_TREE, {"v": 4}, 1),
        (Family.CAYLEY_TREE, {"v": 4}, 1),
        (Family.CAYLEY_TREE, {"v": 8}, 1),
    ],
    "cube-trees": [
        (Family.CAYLEY_TREE, {"v": 8}, 1),
        (Family.CAYLEY_TREE, {"v": 20}, 1),
        (Family.HYPERCUBE, {}, 1),
    ],
    "cube-torus": [
        (Family.HYPERCUBE, {}, 1),
        (Family.HYPERTORUS, {"d": 10}, 2),
        (Family.HYPERTORUS, {"d": 3}, 2),
    ],
}


def _close_at_peer_limit(series: SweepSeries, d: int, times: ServiceTimes) -> SweepSeries:
    """End a torus curve exactly at the peer limit with a fractional ring size.

    Integer ring sizes overshoot the limit for most d; the ranking preset
    uses k = 2**(21/d) for the same population.
    """
    if series.points and series.points[-1].n_total >= FIGURE_PEER_LIMIT:
        return series
    # k**d equals the limit up to float rounding
    spec = TopologySpec.hypertorus(d, 2.0 ** (math.log2(FIGURE_PEER_LIMIT) / d))
    point = SweepPoint(
        size=spec.k,
        n_total=FIGURE_PEER_LIMIT,
        x_relative=demand_profile(spec, times).x_relative,
    )
    return series.model_copy(update={"points": series.points + [point]})


def figure_series(name: str, times: ServiceTimes = UNIT_TIMES) -> List[SweepSeries]:
    if name not in FIGURES:
        raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    curves = []
    for family, fixed, start in FIGURES[name]:
        series = sweep(family, start, times=times, peer_limit=FIGURE_PEER_LIMIT, **fixed)
        if family is Family.HYPERTORUS:
            series = _close_at_peer_limit(series, fixed["d"], times)
        curves.append(series)
    return curves
