"""
圆构型服务测试
"""
import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from jordankit.app.core.exceptions import InvalidConfigurationError, InvalidInputError
from jordankit.app.models.geometry import Circle, CircleConfiguration, PairClass
from jordankit.app.models.tree import RootedTree
from jordankit.app.services.geometry_service import geometry_service
from jordankit.app.services.sampler_service import sampler_service
from jordankit.app.services.tree_service import tree_service

from .conftest import SEVEN_PARENTS

circles = st.builds(
    Circle,
    st.floats(-10, 10, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
    st.floats(0.01, 5, allow_nan=False),
)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((0, 0, 1), (3, 0, 1), PairClass.SEPARATE),
        ((0, 0, 2), (0.5, 0, 0.5), PairClass.NESTED_SECOND_IN_FIRST),
        ((1, 1, 0.15), (1.2, 1.2, 0.5), PairClass.NESTED_FIRST_IN_SECOND),
        ((0, 0, 1), (1, 0, 1), PairClass.INTERSECTING),
        ((0, 0, 1), (2, 0, 1), PairClass.INTERSECTING),
    ],
)
def test_classify_pair(a, b, expected):
    """测试两圆位置关系"""
    assert geometry_service.classify_pair(Circle(*a), Circle(*b)) is expected


@given(circles, circles)
def test_classify_pair_symmetric(a, b):
    """交换参数只交换两个嵌套标签"""
    assert geometry_service.classify_pair(b, a) is geometry_service.classify_pair(a, b).swapped()


def test_validate_configuration(seven_circles):
    """测试构型校验"""
    assert geometry_service.validate_configuration(seven_circles).ok
    assert geometry_service.validate_configuration(CircleConfiguration()).ok

    report = geometry_service.validate_configuration(
        CircleConfiguration((Circle(0, 0, 1), Circle(1, 0, 1)))
    )
    assert not report.ok
    assert report.violations == ((1, 2),)
    assert report.messages


@pytest.mark.parametrize("r", [0.0, -1.0, float("nan")])
def test_circle_rejects_bad_radius(r):
    """非正半径在构造圆时就被拒绝, 不会进入构型校验"""
    with pytest.raises(InvalidInputError):
        Circle(0, 0, r)


def test_circle_nesting_tree(seven_circles):
    """测试嵌套树提取"""
    tree = geometry_service.circle_nesting_tree(seven_circles)
    assert tree.parents == SEVEN_PARENTS
    assert tree.labeled

    single = geometry_service.circle_nesting_tree(CircleConfiguration((Circle(0, 0, 1),)))
    assert single.parents == (0,)

    star = CircleConfiguration((Circle(0, 0, 1), Circle(3, 0, 1), Circle(6, 0, 1)))
    assert geometry_service.circle_nesting_tree(star).children(0) == (1, 2, 3)


def test_circle_nesting_tree_rejects_invalid():
    with pytest.raises(InvalidConfigurationError):
        geometry_service.circle_nesting_tree(CircleConfiguration((Circle(0, 0, 1), Circle(1, 0, 1))))


def _containment_oracle(c: CircleConfiguration) -> tuple:
    """完整包含关系后取传递约化"""
    n = len(c)
    inside = [
        [
            i != j and (c[j].r - c[i].r) ** 2 - ((c[i].x - c[j].x) ** 2 + (c[i].y - c[j].y) ** 2) > 0 and c[i].r < c[j].r
            for j in range(n)
        ]
        for i in range(n)
    ]
    parents = []
    for i in range(n):
        containers = [j for j in range(n) if inside[i][j]]
        immediate = [j for j in containers if not any(inside[k][j] for k in containers)]
        assert len(immediate) <= 1
        parents.append(immediate[0] + 1 if immediate else 0)
    return tuple(parents)


def test_circle_nesting_tree_matches_oracle(rng):
    """与包含关系的传递约化比较"""
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        c = sampler_service.random_circle_configuration(n, rng)
        assert geometry_service.circle_nesting_tree(c).parents == _containment_oracle(c)


def _rejection_sample(n: int, rng: np.random.Generator, gap: float) -> CircleConfiguration:
    """独立抽取圆, 丢弃与已有圆相交者; 一半候选贴近某个已有圆, 间隙为 gap 倍半径"""
    accepted = []
    while len(accepted) < n:
        r = float(rng.uniform(0.05, 2.0))
        if accepted and rng.random() < 0.5:
            anchor = accepted[int(rng.integers(len(accepted)))]
            direction = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
            if r < anchor.r and rng.random() < 0.5:
                d = (anchor.r - r) * (1.0 - gap)
            else:
                d = (anchor.r + r) * (1.0 + gap)
            center = anchor.center + d * direction
        else:
            center = complex(*rng.uniform(-4.0, 4.0, size=2))
        candidate = Circle(center.real, center.imag, r)
        if all(geometry_service.classify_pair(candidate, c) is not PairClass.INTERSECTING for c in accepted):
            accepted.append(candidate)
    return CircleConfiguration(tuple(accepted))


@pytest.mark.parametrize("gap", [1e-3, 1e-6])
def test_circle_nesting_tree_matches_oracle_near_tangent(rng, gap):
    """独立圆拒绝采样, 含大量近似相切的内切与外切对"""
    for _ in range(300):
        c = _rejection_sample(int(rng.integers(2, 9)), rng, gap)
        assert geometry_service.validate_configuration(c).ok
        assert geometry_service.circle_nesting_tree(c).parents == _containment_oracle(c)


def test_nesting_tree_similarity_invariant(seven_circles, rng):
    """相似变换不改变嵌套树"""
    for _ in range(20):
        rotation, scale, translation = sampler_service.random_similarity(rng)
        moved = geometry_service.apply_similarity(seven_circles, rotation, scale, translation)
        assert geometry_service.circle_nesting_tree(moved).parents == SEVEN_PARENTS


def test_planar_child_order(seven_circles):
    """孩子按圆心的 (x, y) 字典序排列"""
    tree = geometry_service.circle_nesting_tree(seven_circles)
    ordered = geometry_service.planar_child_order(seven_circles, tree)
    assert ordered.children(0) == (1, 5)
    assert ordered.children(7) == (6,)

    pair = CircleConfiguration((Circle(0, 3, 1), Circle(0, 0, 1)))
    ordered = geometry_service.planar_child_order(pair, geometry_service.circle_nesting_tree(pair))
    assert ordered.children(0) == (2, 1)


def test_forget_nested_commutes_with_restriction(seven_circles):
    """只保留外层圆后的嵌套树等于原树的根孩子限制"""
    outer, kept = geometry_service.forget_nested(seven_circles)
    assert kept == (1, 5)
    assert [c.r for c in outer] == [0.3, 2.0]
    full = geometry_service.circle_nesting_tree(seven_circles)
    restricted = tree_service.restrict_to_root_children(full)
    assert geometry_service.circle_nesting_tree(outer).parents == restricted.parents


def test_realize_tree_round_trip(rng):
    """树 -> 圆构型 -> 嵌套树 还原原树"""
    for n in range(0, 6):
        for code in tree_service.enumerate_trees(n):
            tree = tree_service.tree_from_code(code)
            c = geometry_service.realize_tree(tree, rng)
            assert geometry_service.validate_configuration(c).ok
            assert geometry_service.circle_nesting_tree(c).parents == tree.parents


def test_permute_relabels():
    c = CircleConfiguration((Circle(0, 0, 2), Circle(0, 0, 1)))
    swapped = geometry_service.permute(c, [1, 0])
    assert geometry_service.circle_nesting_tree(swapped) == RootedTree((2, 0), labeled=True)


@hyp_settings(max_examples=50, deadline=None)
@given(st.floats(0, 2 * np.pi), st.floats(0.1, 10), st.complex_numbers(max_magnitude=100))
def test_apply_similarity_preserves_validity(rotation, scale, translation):
    c = CircleConfiguration((Circle(0, 0, 2), Circle(0.5, 0, 0.5), Circle(5, 0, 1)))
    moved = geometry_service.apply_similarity(c, rotation, scale, translation)
    assert geometry_service.circle_nesting_tree(moved).parents == (0, 1, 0)
