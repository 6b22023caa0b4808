import pytest

from hypernet.topology import TopologySpec, node_count


@pytest.fixture
def cube3():
    return TopologySpec.hypercube(3)


@pytest.fixture
def star():
    """Cayley tree with a center and three leaves."""
    return TopologySpec.cayley_tree(3, 1)


def _max_radius(v: int) -> int:
    return 5 if v <= 4 else 3 if v == 8 else 2


# Small instances of every family, cheap enough for all-pairs checks.
SMALL_SPECS = (
    [TopologySpec.rooted_tree(v, r) for v in (2, 3, 4, 8, 20) for r in range(_max_radius(v) + 1)]
    + [TopologySpec.cayley_tree(v, r) for v in (3, 4, 8, 20) for r in range(_max_radius(v) + 1)]
    + [TopologySpec.hypercube(d) for d in range(1, 11)]
    + [TopologySpec.hypertorus(d, k) for d in (1, 2, 3) for k in range(2, 9)]
)

# Wide trees up to 168,421 nodes; above the all-pairs cap these are verified
# by root BFS and double sweep.
LARGE_TREE_SPECS = (
    [TopologySpec.rooted_tree(8, r) for r in (4, 5)]
    + [TopologySpec.cayley_tree(8, r) for r in (4, 5)]
    + [TopologySpec.rooted_tree(20, r) for r in (3, 4)]
    + [TopologySpec.cayley_tree(20, r) for r in (3, 4)]
)


def spec_id(spec: TopologySpec) -> str:
    size = spec.radius if spec.family.is_tree else spec.k
    return f"{spec.label}-{size}" if size is not None else spec.label


def _oracle_param(spec: TopologySpec):
    marks = [pytest.mark.slow] if node_count(spec) > 100_000 else []
    return pytest.param(spec, id=spec_id(spec), marks=marks)


@pytest.fixture(params=SMALL_SPECS, ids=spec_id)
def small_spec(request):
    return request.param


@pytest.fixture(params=[_oracle_param(s) for s in SMALL_SPECS + LARGE_TREE_SPECS])
def oracle_spec(request):
    """Every small spec plus the wide trees, for checks that avoid all-pairs BFS."""
    return request.param
