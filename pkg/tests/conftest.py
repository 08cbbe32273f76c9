"""
测试共用夹具
"""
import json

import numpy as np
import pytest

from jordankit.app.models.curve import JordanConfiguration, PolyCurve, RoundCurve
from jordankit.app.models.geometry import Circle, CircleConfiguration
from jordankit.app.models.tree import RootedTree
from jordankit.app.services.tree_service import tree_service

# 七个圆: 1 与 5 在最外层, 2、7 在 5 内, 3、4 在 2 内, 6 在 7 内
SEVEN_CIRCLES = [
    (-2.0, -0.5, 0.3),
    (0.0, 0.0, 1.0),
    (-0.2, 0.3, 0.2),
    (-0.2, -0.3, 0.3),
    (0.6, 0.0, 2.0),
    (1.0, 1.0, 0.15),
    (1.2, 1.2, 0.5),
]
SEVEN_PARENTS = (0, 5, 2, 2, 0, 7, 5)


def ellipse(center: complex, a: float, b: float, count: int) -> PolyCurve:
    theta = 2.0 * np.pi * np.arange(count) / count
    return PolyCurve.from_points(center + a * np.cos(theta) + 1j * b * np.sin(theta))


@pytest.fixture
def seven_circles() -> CircleConfiguration:
    return CircleConfiguration(tuple(Circle(x, y, r) for x, y, r in SEVEN_CIRCLES))


@pytest.fixture
def seven_tree() -> RootedTree:
    return RootedTree(SEVEN_PARENTS, labeled=True)


@pytest.fixture
def relabeled_trees():
    """T1 与 T2 作为带标号树相等但平面序相反, T3 是 T1 的非自同构重编号, 只在遗忘标号后与它们相等"""
    t1 = RootedTree((0, 0, 2, 2), labeled=True)
    t2 = RootedTree((0, 0, 2, 2), labeled=True, child_order=((2, 1), (), (4, 3), (), ()))
    t3 = tree_service.relabel(t1, [3, 4, 1, 2])
    return t1, t2, t3


@pytest.fixture
def ellipse_configuration() -> JordanConfiguration:
    """半轴 3、1 的椭圆, 内含两个圆"""
    return JordanConfiguration(
        (
            ellipse(complex(-4.0, 0.0), 3.0, 1.0, 1024),
            RoundCurve.discretized(complex(-5.0, 0.0), 0.75, 128),
            RoundCurve.discretized(complex(-2.0, 0.0), 0.25, 128),
        )
    )


@pytest.fixture
def square() -> PolyCurve:
    return PolyCurve(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]))


@pytest.fixture
def l_shape() -> PolyCurve:
    return PolyCurve(np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]]))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def write_json(tmp_path):
    """把文档写入临时文件并返回路径"""

    def _write(name: str, data) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
