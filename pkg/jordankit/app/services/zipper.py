"""
测地线 zipper 算法
把多边形区域共形映射到上半平面, 再经 Möbius 变换到单位圆盘; 映射链由初等
slit 映射组成, 正反两个方向都可以逐步求值。

平面点用复数表示。边界点 z_0..z_{N-1} 按逆时针排列:
  1. φ(z) = i·sqrt((z - z_1)/(z - z_0)) 把边 [z_0, z_1] 展开到负实轴
  2. 对余下每个点 a, 沿过 0 与 a 的测地线剪开: T(z) = z/(1 - βz),
     f(z) = sqrt(T² + c²), 其中 β = Re a/|a|², c = |a|²/Im a, a 被送到 0
  3. M(z) = z/(1 - z/ζ₀) 把 z_0 的像送到无穷远, 再平方展开最后一段
  4. 上半平面到圆盘: D(g) = (g - q)/(g - q̄), q 为中心的像, 再乘以旋转
"""
import logging
import math
from dataclasses import replace

import numpy as np
import shapely
from shapely.geometry import LinearRing

from ..core.exceptions import DiskMapError
from ..models.conformal import DiskMap
from ..models.curve import Curve

logger = logging.getLogger(__name__)


def upper_sqrt(z: np.ndarray) -> np.ndarray:
    """取落在闭上半平面的平方根分支"""
    r = np.sqrt(z)
    return np.where(r.imag < 0, -r, r)


def refine_points(curve: Curve, count: int) -> np.ndarray:
    """按边长比例细分多边形, 保留全部原始顶点, 总点数不少于 count"""
    pts = curve.points
    nxt = np.roll(pts, -1)
    lengths = np.abs(nxt - pts)
    per_edge = np.maximum(1, np.ceil(count * lengths / lengths.sum())).astype(int)
    pieces = [pts[k] + (nxt[k] - pts[k]) * (np.arange(per_edge[k]) / per_edge[k]) for k in range(len(pts))]
    return np.concatenate(pieces)


def _advance_infinite(zeta0: float, beta: float, c: float) -> float:
    """在扩充实轴上跟踪 z_0 的像"""
    if math.isinf(zeta0):
        tx = -1.0 / beta if beta != 0 else math.inf
    else:
        den = 1.0 - beta * zeta0
        tx = zeta0 / den if den != 0 else math.inf
    if math.isinf(tx):
        return math.inf
    if tx == 0:
        return -c
    return math.copysign(math.sqrt(tx * tx + c * c), tx)


def _mobius(w: np.ndarray, zeta0: float) -> np.ndarray:
    return w if math.isinf(zeta0) else w / (1.0 - w / zeta0)


def build(
    curve: Curve, center: complex, boundary: np.ndarray, diameter: float, refinement: int = 0
) -> DiskMap:
    """对给定边界点执行一次 zipper, 并在相邻边界点的中点上估计边界误差"""
    pts = np.asarray(boundary, dtype=complex)
    size = len(pts)
    if size < 3:
        raise DiskMapError("边界点不足 3 个")
    z0, z1 = complex(pts[0]), complex(pts[1])
    p = complex(center)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = 1j * np.sqrt((pts[2:] - z1) / (pts[2:] - z0))
        wp = complex(1j * np.sqrt((p - z1) / (p - z0)))
        deriv = -((z1 - z0) / (p - z0) ** 2) / (2.0 * wp)

        zipped = np.zeros(size - 1)  # zipped[i] 为 z_{i+1} 在实轴上的像
        betas = np.empty(size - 2)
        cs = np.empty(size - 2)
        zeta0 = math.inf
        for k in range(size - 2):
            a = complex(w[k])
            if not (np.isfinite(a) and a.imag > 0):
                raise DiskMapError(f"第 {k + 2} 个边界点的像不在上半平面: {a}")
            mod2 = a.real * a.real + a.imag * a.imag
            beta = a.real / mod2
            c = mod2 / a.imag
            betas[k], cs[k] = beta, c

            x = zipped[: k + 1]
            tx = x / (1.0 - beta * x)
            zipped[: k + 1] = np.where(tx > 0, 1.0, -1.0) * np.sqrt(tx * tx + c * c)
            zipped[k + 1] = 0.0

            rest = w[k + 1:]
            tr = rest / (1.0 - beta * rest)
            w[k + 1:] = upper_sqrt(tr * tr + c * c)

            den = 1.0 - beta * wp
            tp = wp / den
            wp_next = complex(upper_sqrt(np.complex128(tp * tp + c * c)))
            deriv *= tp / (wp_next * den * den)
            wp = wp_next
            zeta0 = _advance_infinite(zeta0, beta, c)

        mp = complex(_mobius(np.complex128(wp), zeta0))
        sign = 1.0 if mp.real > 0 else -1.0
        q = sign * mp * mp
        if not q.imag > 0:
            raise DiskMapError(f"中心的像不在上半平面: {q}")
        dm = 1.0 if math.isinf(zeta0) else 1.0 / (1.0 - wp / zeta0) ** 2
        deriv *= dm * 2.0 * sign * mp / (q - q.conjugate())
        if not (np.isfinite(deriv) and deriv != 0):
            raise DiskMapError("映射在中心处的导数退化")
        rotation = deriv.conjugate() / abs(deriv)

        mz = _mobius(zipped, zeta0)
        g = sign * mz * mz
        angles = np.concatenate([[np.angle(rotation)], np.angle(rotation * (g - q) / (g - q.conjugate()))])

    if not np.all(np.isfinite(angles)):
        raise DiskMapError("边界点的像出现非有限值")

    disk_map = DiskMap(
        domain=curve,
        center=p,
        z0=z0,
        z1=z1,
        betas=betas,
        cs=cs,
        zeta0=zeta0,
        sign=sign,
        q=q,
        rotation=rotation,
        derivative_at_center=complex(1.0 / abs(deriv)),
        boundary_points=pts.copy(),
        boundary_angles=angles,
        map_error=math.inf,
        diameter=diameter,
        refinement=refinement,
    )
    return replace(disk_map, map_error=boundary_error(disk_map))


def boundary_error(m: DiskMap, guard: float = 1e-9) -> float:
    """单位圆上相邻边界角中点的像到多边形的最大距离, 相对于区域直径"""
    u = np.exp(1j * m.boundary_angles)
    mids = u + np.roll(u, -1)
    mids = (1.0 - guard) * mids / np.abs(mids)
    img = evaluate(m, mids)
    if not np.all(np.isfinite(img)):
        return math.inf
    ring = LinearRing(np.column_stack([m.domain.points.real, m.domain.points.imag]))
    dist = shapely.distance(shapely.points(img.real, img.imag), ring)
    return float(np.max(dist)) / m.diameter


def evaluate(m: DiskMap, zeta: np.ndarray) -> np.ndarray:
    """γ: 圆盘 -> 区域, 逆序执行映射链 (不做范围检查)"""
    zeta = np.asarray(zeta, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        d = zeta / m.rotation
        g = (m.q - d * np.conj(m.q)) / (1.0 - d)
        mm = np.sqrt(g) if m.sign > 0 else -np.sqrt(-g)
        w = mm if math.isinf(m.zeta0) else mm / (1.0 + mm / m.zeta0)
        for k in range(len(m.betas) - 1, -1, -1):
            u = upper_sqrt(w * w - m.cs[k] * m.cs[k])
            w = u / (1.0 + m.betas[k] * u)
        qq = -w * w
        return (m.z1 - qq * m.z0) / (1.0 - qq)


def evaluate_inverse(m: DiskMap, z: np.ndarray) -> np.ndarray:
    """γ⁻¹: 区域 -> 圆盘, 顺序执行映射链 (不做范围检查)"""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = 1j * np.sqrt((z - m.z1) / (z - m.z0))
        for beta, c in zip(m.betas, m.cs):
            t = w / (1.0 - beta * w)
            w = upper_sqrt(t * t + c * c)
        mm = _mobius(w, m.zeta0)
        g = m.sign * mm * mm
        return m.rotation * (g - m.q) / (g - np.conj(m.q))


def evaluate_on_circle(m: DiskMap, radius: float, indices: np.ndarray, guard: float) -> np.ndarray:
    """γ(radius·e^{iθ_k}); 半径达到 1 - guard 时直接返回边界点"""
    if radius >= 1.0 - guard:
        return m.boundary_points[indices]
    return evaluate(m, radius * np.exp(1j * m.boundary_angles[indices]))


def sample_indices(size: int, count: int) -> np.ndarray:
    """在 0..size-1 中均匀取至多 count 个下标"""
    if size <= count:
        return np.arange(size)
    return np.unique(np.round(np.linspace(0, size - 1, count)).astype(int))
