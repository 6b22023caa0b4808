"""Topology families and their closed-form structural metrics.

Depth is counted from 0 at the root (rooted tree) or the center node (Cayley
tree); ``radius`` is the deepest level. All counts are exact Python integers
checked against the unsigned 64-bit range. Hypertori may carry a fractional
ring size ``k`` in analytic mode, in which case counts become floats.
"""

import logging
import math
from enum import Enum
from typing import Iterator, Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from . import config
from .errors import TopologyOverflowError, UnsupportedFamilyError

logger = logging.getLogger(__name__)

Number = Union[int, float]


class Family(str, Enum):
    ROOTED_TREE = "tree"
    CAYLEY_TREE = "cayley"
    HYPERCUBE = "hypercube"
    HYPERTORUS = "torus"

    @property
    def is_tree(self) -> bool:
        return self in (Family.ROOTED_TREE, Family.CAYLEY_TREE)


class TopologySpec(BaseModel):
    """A topology family plus its size parameters.

    Trees use ``v`` and ``radius``; the hypercube uses ``d``; the hypertorus
    uses ``d`` and ``k``. Parameters that do not belong to the family must be
    left unset. An integral float ``k`` (e.g. 128.0) is stored as an int.
    """

    model_config = ConfigDict(frozen=True)

    family: Family
    v: Optional[int] = None
    radius: Optional[int] = None
    d: Optional[int] = None
    k: Optional[Union[int, float]] = None

    @field_validator("k")
    @classmethod
    def _normalise_k(cls, k):
        if isinstance(k, float):
            if not math.isfinite(k):
                raise ValueError("ring size k must be finite")
            if k.is_integer():
                return int(k)
        return k

    @model_validator(mode="after")
    def _check_family_parameters(self):
        family = self.family
        if family.is_tree:
            if self.v is None or self.radius is None:
                raise ValueError(f"{family.value} needs both v and radius")
            if self.d is not None or self.k is not None:
                raise ValueError(f"{family.value} takes no d or k")
            if self.radius < 0:
                raise ValueError("radius must be non-negative")
            if family is Family.ROOTED_TREE and self.v < 2:
                raise ValueError("rooted tree needs v >= 2")
            if family is Family.CAYLEY_TREE and self.v < 3:
                raise ValueError("Cayley tree needs v >= 3")
        else:
            if self.d is None:
                raise ValueError(f"{family.value} needs a dimension d")
            if self.v is not None or self.radius is not None:
                raise ValueError(f"{family.value} takes no v or radius")
            if self.d < 1:
                raise ValueError("dimension d must be >= 1")
            if family is Family.HYPERCUBE and self.k is not None:
                raise ValueError("hypercube takes no k")
            if family is Family.HYPERTORUS:
                if self.k is None:
                    raise ValueError("torus needs a ring size k")
                if self.k < 2:
                    raise ValueError("torus ring size k must be >= 2")
        return self

    @classmethod
    def rooted_tree(cls, v: int, radius: int) -> "TopologySpec":
        return cls(family=Family.ROOTED_TREE, v=v, radius=radius)

    @classmethod
    def cayley_tree(cls, v: int, radius: int) -> "TopologySpec":
        return cls(family=Family.CAYLEY_TREE, v=v, radius=radius)

    @classmethod
    def hypercube(cls, d: int) -> "TopologySpec":
        return cls(family=Family.HYPERCUBE, d=d)

    @classmethod
    def hypertorus(cls, d: int, k: Number) -> "TopologySpec":
        return cls(family=Family.HYPERTORUS, d=d, k=k)

    @property
    def is_integral(self) -> bool:
        return self.k is None or isinstance(self.k, int)

    @property
    def label(self) -> str:
        if self.family is Family.ROOTED_TREE:
            return f"{self.v}-Tree"
        if self.family is Family.CAYLEY_TREE:
            return f"{self.v}-Cayley"
        if self.family is Family.HYPERCUBE:
            return f"{self.d}-Cube"
        return f"{self.d}-Torus"


class StructuralMetrics(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_total: Number
    diameter: float
    links: Number
    internal_path_length: Optional[int] = None
    avg_hops: float


def _checked(value: Number, what: str, spec: TopologySpec) -> Number:
    if value > config.UINT64_MAX:
        raise TopologyOverflowError(
            f"{what} of {spec.label} exceeds the unsigned 64-bit range"
        )
    return value


def _require_tree(spec: TopologySpec, operation: str) -> None:
    if not spec.family.is_tree:
        raise UnsupportedFamilyError(
            f"{operation} is only defined for trees, not {spec.family.value}"
        )


def _levels(spec: TopologySpec) -> Iterator[int]:
    """Per-level populations of a tree, depth 0 first."""
    v, radius = spec.v, spec.radius
    yield 1
    population = v
    for _ in range(1, radius + 1):
        yield _checked(population, "level population", spec)
        population *= v if spec.family is Family.ROOTED_TREE else v - 1


def node_count(spec: TopologySpec) -> Number:
    """Peer count N."""
    family = spec.family
    # Reject astronomically large sizes before building the exact integer.
    if family is Family.ROOTED_TREE:
        if spec.radius * math.log2(spec.v) >= 64.5:
            raise TopologyOverflowError(f"node count of {spec.label} overflows")
        v = spec.v
        n = (v ** (spec.radius + 1) - 1) // (v - 1)
    elif family is Family.CAYLEY_TREE:
        if (spec.radius - 1) * math.log2(spec.v - 1) >= 64.5:
            raise TopologyOverflowError(f"node count of {spec.label} overflows")
        v = spec.v
        n = 1 + v * ((v - 1) ** spec.radius - 1) // (v - 2)
    elif family is Family.HYPERCUBE:
        if spec.d >= 64:
            raise TopologyOverflowError(f"node count of {spec.label} overflows")
        n = 2**spec.d
    else:
        if spec.d * math.log2(spec.k) >= 64.5:
            raise TopologyOverflowError(f"node count of {spec.label} overflows")
        n = spec.k**spec.d
    return _checked(n, "node count", spec)


def level_population(spec: TopologySpec, level: int) -> int:
    """Number of nodes at depth ``level`` of a tree."""
    _require_tree(spec, "level_population")
    if not 0 <= level <= spec.radius:
        raise ValueError(f"level {level} outside 0..{spec.radius}")
    if level == 0:
        return 1
    if spec.family is Family.ROOTED_TREE:
        population = spec.v**level
    else:
        population = spec.v * (spec.v - 1) ** (level - 1)
    return _checked(population, "level population", spec)


def diameter(spec: TopologySpec) -> float:
    """Network diameter as tabulated: 2R, d, or d*k/4 for the torus."""
    if spec.family.is_tree:
        return float(2 * spec.radius)
    if spec.family is Family.HYPERCUBE:
        return float(spec.d)
    # d * N^(1/d) / 4 with N = k^d; half the true ring diameter, kept as published.
    return spec.d * spec.k / 4


def link_count(spec: TopologySpec) -> Number:
    """Link count L: N for trees, d*N/2 for the cube, d*N for the torus."""
    n = node_count(spec)
    if spec.family.is_tree:
        return n
    if spec.family is Family.HYPERCUBE:
        return _checked(spec.d * n // 2, "link count", spec)
    return _checked(spec.d * n, "link count", spec)


def internal_path_length(spec: TopologySpec) -> int:
    """Sum over tree nodes of their depth, P = sum_j j * level_population(j)."""
    _require_tree(spec, "internal_path_length")
    node_count(spec)
    total = sum(depth * population for depth, population in enumerate(_levels(spec)))
    return _checked(total, "internal path length", spec)


def average_hops(spec: TopologySpec) -> float:
    """Mean hop count H, self-pairs included."""
    if spec.family.is_tree:
        return internal_path_length(spec) / node_count(spec)
    if spec.family is Family.HYPERCUBE:
        return spec.d / 2
    d, k = spec.d, spec.k
    if isinstance(k, int) and k % 2 == 1:
        # mean ring distance for odd k is (k^2 - 1) / (4k)
        return d * (k * k - 1) / (4 * k)
    return d * k / 4


def connections_per_peer(spec: TopologySpec) -> int:
    if spec.family.is_tree:
        return spec.v
    if spec.family is Family.HYPERCUBE:
        return spec.d
    return 2 * spec.d


def structural_metrics(spec: TopologySpec) -> StructuralMetrics:
    metrics = StructuralMetrics(
        n_total=node_count(spec),
        diameter=diameter(spec),
        links=link_count(spec),
        internal_path_length=(
            internal_path_length(spec) if spec.family.is_tree else None
        ),
        avg_hops=average_hops(spec),
    )
    logger.debug(f"structural metrics for {spec.label}: {metrics}")
    return metrics
