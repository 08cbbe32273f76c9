"""
共形圆化服务测试
"""
import math

import numpy as np
import pytest
from shapely.geometry import LinearRing

from jordankit.app.core.config import settings
from jordankit.app.core.exceptions import DiskMapError, InvalidInputError
from jordankit.app.core.tasks import task_manager
from jordankit.app.models.conformal import ShrinkParameter
from jordankit.app.models.curve import JordanConfiguration, PolyCurve, RoundCurve
from jordankit.app.services.conformal_service import conformal_service
from jordankit.app.services.curve_service import curve_service
from jordankit.app.services.sampler_service import sampler_service

# 边长为 2 的正方形在中心处的共形半径 8√π / Γ(1/4)²
SQUARE_CONFORMAL_RADIUS = 8 * math.sqrt(math.pi) / math.gamma(0.25) ** 2


def regular(center: complex, radius: float, count: int) -> PolyCurve:
    return PolyCurve.from_points(center + radius * np.exp(2j * np.pi * np.arange(count) / count))


def flower(center: complex, radius: float, count: int = 64) -> PolyCurve:
    theta = 2 * np.pi * np.arange(count) / count
    return PolyCurve.from_points(center + radius * (1.15 + 0.15 * np.cos(5 * theta)) * np.exp(1j * theta))


def disk_grid(radius: float = 0.9) -> np.ndarray:
    xs = np.linspace(-radius, radius, 15)
    grid = (xs[:, None] + 1j * xs[None, :]).ravel()
    return grid[np.abs(grid) <= radius]


@pytest.fixture(scope="module")
def disk_map():
    return conformal_service.build_disk_map(regular(0j, 1.0, 256), 0j)


@pytest.fixture(scope="module")
def square_map():
    square = PolyCurve(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]))
    return conformal_service.build_disk_map(square)


def test_disk_map_is_near_identity(disk_map):
    """正 256 边形的映射接近恒等"""
    z = disk_grid()
    assert np.abs(conformal_service.map_forward(disk_map, z) - z).max() <= 5e-3
    assert conformal_service.map_forward(disk_map, 0j) == 0j
    assert disk_map.map_error <= settings.BOUNDARY_TOL


def test_square_conformal_radius(square_map):
    """正方形中心处的导数等于其共形半径"""
    assert abs(square_map.derivative_at_center) == pytest.approx(SQUARE_CONFORMAL_RADIUS, rel=1e-2)
    assert square_map.derivative_at_center.imag == 0
    assert square_map.derivative_at_center.real > 0


def test_forward_inverse_round_trip(square_map, rng):
    """100 个随机内点上正逆映射互逆"""
    radius = np.sqrt(rng.uniform(0, 0.81, size=100))
    z = radius * np.exp(1j * rng.uniform(0, 2 * np.pi, size=100))
    w = conformal_service.map_forward(square_map, z)
    assert np.abs(conformal_service.map_inverse(square_map, w) - z).max() <= 1e-6


def test_forward_is_holomorphic(square_map):
    """离散 Cauchy-Riemann 残差"""
    z = disk_grid(0.8)
    h = 1e-6
    f0 = conformal_service.map_forward(square_map, z)
    dx = (conformal_service.map_forward(square_map, z + h) - f0) / h
    dy = (conformal_service.map_forward(square_map, z + 1j * h) - f0) / (1j * h)
    assert (np.abs(dx - dy) / np.abs(dx)).max() <= 1e-4


def test_map_range_errors(square_map):
    with pytest.raises(DiskMapError):
        conformal_service.map_forward(square_map, 1.5 + 0j)
    with pytest.raises(DiskMapError):
        conformal_service.map_inverse(square_map, 3 + 0j)
    square = square_map.domain
    with pytest.raises(DiskMapError):
        conformal_service.build_disk_map(square, 5 + 0j)


def test_shrink_phi():
    """φ_y(s, z) = (1 - ys)z"""
    assert conformal_service.shrink_phi(0.0, 0.7, 0.3 + 0.4j) == 0.3 + 0.4j
    assert conformal_service.shrink_phi(ShrinkParameter(0.5), 1.0, 1 + 0j) == 0.5 + 0j
    assert conformal_service.shrink_phi(0.9, 0.0, 0.2j) == 0.2j


def test_rounding_h(square_map):
    """t = 1 时与 γ((1-y)z) 一致, 线性分支在切换点连续"""
    y = 0.2
    z = 0.6 * np.exp(1j * np.linspace(0, 2 * np.pi, 9))
    expected = conformal_service.map_forward(square_map, (1 - y) * z)
    assert np.allclose(conformal_service.rounding_h(square_map, y, 1.0, z), expected, atol=1e-12)

    boundary = np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    at_switch = conformal_service.rounding_h(square_map, y, settings.LINEAR_BRANCH_T, boundary)
    just_after = conformal_service.rounding_h(square_map, y, settings.LINEAR_BRANCH_T * 1.01, boundary)
    assert np.abs(at_switch - just_after).max() <= 1e-5

    with pytest.raises(InvalidInputError):
        conformal_service.rounding_h(square_map, y, 1.5, z)


def test_rounding_h_on_disk_is_t_independent(disk_map):
    z = 0.5 * np.exp(1j * np.linspace(0, 2 * np.pi, 7))
    values = [conformal_service.rounding_h(disk_map, 0.3, t, z) for t in (1e-5, 0.25, 0.5, 1.0)]
    for v in values[1:]:
        assert np.abs(v - values[0]).max() <= 5e-3


def test_solve_shrink_parameter_disk(disk_map):
    """圆盘区域几乎不需要收缩"""
    r = curve_service.curve_metrics(disk_map.domain).inradius
    assert conformal_service.solve_shrink_parameter(disk_map, r).y < 5e-3


def test_solve_shrink_parameter_square(square_map, monkeypatch):
    """M(y) = r, 且在更细的 t 网格上复核"""
    r = curve_service.curve_metrics(square_map.domain).inradius
    y = conformal_service.solve_shrink_parameter(square_map, r).y
    assert 0 < y < 1
    assert conformal_service.sup_radius(square_map, y) == pytest.approx(r, rel=1e-6)
    monkeypatch.setattr(settings, "SHRINK_T_GRID", 129)
    assert conformal_service.sup_radius(square_map, y) == pytest.approx(r, rel=5e-3)


def test_solve_shrink_parameter_scale_invariant(square_map):
    """区域缩放不改变收缩参数"""
    square = square_map.domain
    scaled = PolyCurve.from_points(3.0 * square.points)
    y1 = conformal_service.solve_shrink_parameter(square_map, curve_service.curve_metrics(square).inradius).y
    scaled_map = conformal_service.build_disk_map(scaled)
    y2 = conformal_service.solve_shrink_parameter(scaled_map, curve_service.curve_metrics(scaled).inradius).y
    assert y1 == pytest.approx(y2, abs=1e-6)


def test_plan_schedule(seven_tree):
    """阶段按深度由浅到深激活曲线"""
    schedule = conformal_service.plan_schedule(seven_tree, 4)
    assert [stage.active for stage in schedule.stages] == [(0, 4), (1, 6), (2, 3, 5)]
    assert sorted(schedule.stages[0].followers[4]) == [1, 2, 3, 5, 6]
    assert schedule.stages[0].followers[0] == ()
    assert schedule.total_frames == 13


def test_conformal_retract_round_input_is_constant(seven_circles, mocker):
    """圆构型的每一帧都等于输入, 且不构造任何圆盘映射"""
    spy = mocker.spy(conformal_service, "build_disk_map")
    j = curve_service.circles_to_curves(seven_circles, 64)
    frames = conformal_service.conformal_retract(j, 3)
    assert len(frames) == 1 + 3 * 3
    for frame in frames:
        for before, after in zip(j, frame):
            assert np.allclose(before.points, after.points, atol=1e-12)
    assert spy.call_count == 0


def test_conformal_retract_l_shape(l_shape, mocker):
    """非凸的 L 形曲线最终成为圆"""
    spy = mocker.spy(task_manager, "run_stage")
    frames, diagnostics = conformal_service.conformal_retract_with_diagnostics(JordanConfiguration((l_shape,)), 2)
    assert len(frames) >= 3
    assert all(curve_service.validate_curves(frame).ok for frame in frames)
    assert curve_service.is_round(frames[-1][0], 1e-2)
    assert spy.call_count == 1
    assert len(diagnostics) == 1
    stage = diagnostics[0]
    assert stage["stage"] == 0
    assert stage["active"] == [1]
    assert 0 < stage["y"]["1"] < 1
    assert stage["map_error"]["1"] <= settings.BOUNDARY_TOL


@pytest.mark.slow
def test_conformal_retract_nested_configuration(mocker):
    """一条曲线内含两条曲线, 另有一条分离曲线: 嵌套树不变, 末帧全部为圆"""
    j = JordanConfiguration(
        (
            PolyCurve(np.array([[4.0, -1.0], [6.0, -1.0], [6.0, 1.0], [4.0, 1.0]])),
            flower(0j, 1.0),
            RoundCurve.discretized(complex(-0.4, 0.0), 0.2, 128),
            RoundCurve.discretized(complex(0.4, 0.0), 0.2, 128),
        )
    )
    spy = mocker.spy(task_manager, "run_stage")
    frames = conformal_service.conformal_retract(j, 2)
    tree = curve_service.curve_nesting_tree(j)
    assert tree.parents == (0, 0, 2, 2)
    for frame in frames:
        assert curve_service.curve_nesting_tree(frame).parents == tree.parents
    assert all(curve_service.is_round(c, 1e-2) for c in frames[-1])
    assert spy.call_count == 2


def test_execute_schedule_records_maps(l_shape):
    """执行后的调度带有激活曲线的圆盘映射与收缩参数, 规划时两者为空"""
    j = JordanConfiguration((l_shape, RoundCurve.discretized(complex(5.0, 0.0), 1.0, 64)))
    planned = conformal_service.plan_schedule(curve_service.curve_nesting_tree(j), 2)
    assert all(not s.disk_maps and not s.shrink for s in planned.stages)

    frames, schedule = conformal_service.execute_schedule(j, 2)
    assert len(schedule.stages) == 1
    stage = schedule.stages[0]
    assert stage.active == (0, 1)
    assert list(stage.disk_maps) == [0]
    assert list(stage.shrink) == [0]
    assert 0 < stage.shrink[0].y < 1
    assert stage.disk_maps[0].map_error <= settings.BOUNDARY_TOL
    assert len(frames) >= schedule.total_frames


def _max_relative_hausdorff(a: JordanConfiguration, b: JordanConfiguration, size: float) -> float:
    return max(LinearRing(p.vertices).hausdorff_distance(LinearRing(q.vertices)) for p, q in zip(a, b)) / size


@pytest.mark.slow
def test_conformal_retract_random_nonconvex(rng):
    """随机非凸构型: 每帧有效, 嵌套树不变, 末帧全部为圆"""
    for _ in range(12):
        n = int(rng.integers(1, 4))
        j = sampler_service.random_nonconvex_configuration(n, rng)
        tree = curve_service.curve_nesting_tree(j)
        frames = conformal_service.conformal_retract(j, 3)
        for frame in frames:
            assert curve_service.validate_curves(frame).ok
            assert curve_service.curve_nesting_tree(frame).parents == tree.parents
        assert all(curve_service.is_round(c, 1e-2) for c in frames[-1])


@pytest.mark.slow
def test_conformal_retract_similarity_equivariant(rng):
    """先做相似变换再圆化, 每一帧都等于先圆化再变换"""
    for _ in range(4):
        j = sampler_service.random_nonconvex_configuration(2, rng)
        rotation, scale, translation = sampler_service.random_similarity(rng)
        moved = curve_service.apply_similarity(j, rotation, scale, translation)
        frames = conformal_service.conformal_retract(j, 2)
        frames_moved = conformal_service.conformal_retract(moved, 2)
        assert len(frames_moved) == len(frames)
        size = scale * max(curve_service.diameter(c) for c in j)
        for frame, frame_moved in zip(frames, frames_moved):
            expected = curve_service.apply_similarity(frame, rotation, scale, translation)
            assert _max_relative_hausdorff(frame_moved, expected, size) <= 1e-6


def test_conformal_retract_rejects_bad_frame_count(l_shape):
    with pytest.raises(InvalidInputError):
        conformal_service.conformal_retract(JordanConfiguration((l_shape,)), 0)
