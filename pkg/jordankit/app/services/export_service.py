"""
导出服务
把帧序列写成 JSON lines 或 SVG
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from ..core.config import settings
from ..models.curve import JordanConfiguration
from ..schemas.geometry import CurveSchema, FrameDocument, StageDiagnosticsDocument

logger = logging.getLogger(__name__)


class ExportService:
    """导出服务"""

    def frame_documents(self, frames: Sequence[JordanConfiguration], frames_per_stage: int) -> List[FrameDocument]:
        """为每帧标注全局时刻 t 与阶段序号 (初始帧为阶段 0)"""
        last = max(len(frames) - 1, 1)
        docs = []
        for k, frame in enumerate(frames):
            stage = 0 if k == 0 else (k - 1) // frames_per_stage + 1
            docs.append(
                FrameDocument(t=k / last, stage=stage, curves=[CurveSchema.from_curve(c) for c in frame])
            )
        return docs

    def frames_jsonl(self, frames: Sequence[JordanConfiguration], frames_per_stage: int) -> str:
        lines = [doc.model_dump_json() for doc in self.frame_documents(frames, frames_per_stage)]
        return "\n".join(lines) + "\n"

    def svg(self, frame: JordanConfiguration, precision: Optional[int] = None) -> str:
        """单帧 SVG: 每条曲线一个 path, y 轴向上, viewBox 自动适配"""
        digits = precision if precision is not None else settings.SVG_PRECISION

        def num(v: float) -> str:
            return f"{v + 0.0:.{digits}g}"

        paths = []
        xs: List[float] = []
        ys: List[float] = []
        for curve in frame:
            pts = curve.vertices
            xs.extend(pts[:, 0])
            ys.extend(-pts[:, 1])
            d = " L ".join(f"{num(x)} {num(-y)}" for x, y in pts)
            paths.append(f'<path d="M {d} Z" fill="none" stroke="black" stroke-width="{{w}}"/>')
        if xs:
            x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        else:
            x0, x1, y0, y1 = -1.0, 1.0, -1.0, 1.0
        size = max(x1 - x0, y1 - y0, 1e-9)
        margin = 0.05 * size
        width = num(size * 0.002)
        box = " ".join(num(v) for v in (x0 - margin, y0 - margin, x1 - x0 + 2 * margin, y1 - y0 + 2 * margin))
        body = "\n".join("  " + p.replace("{w}", width) for p in paths)
        return f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{box}">\n{body}\n</svg>\n'

    def write_frames(
        self,
        frames: Sequence[JordanConfiguration],
        frames_per_stage: int,
        output_dir: Union[str, Path],
        fmt: str = "json",
    ) -> List[Path]:
        """写入 frames.jsonl 或 frame_XXXX.svg, 返回写入的文件"""
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        if fmt == "svg":
            for k, frame in enumerate(frames):
                path = out / f"frame_{k:04d}.svg"
                path.write_text(self.svg(frame), encoding="utf-8")
                written.append(path)
        else:
            path = out / "frames.jsonl"
            path.write_text(self.frames_jsonl(frames, frames_per_stage), encoding="utf-8")
            written.append(path)
        logger.info(f"已写入 {len(written)} 个文件到 {out}")
        return written

    def write_diagnostics(self, path: Union[str, Path], diagnostics: Sequence[Dict[str, object]]) -> None:
        docs = [StageDiagnosticsDocument.model_validate(d).model_dump() for d in diagnostics]
        Path(path).write_text(json.dumps(docs, ensure_ascii=False, indent=2), encoding="utf-8")
        logger.info(f"诊断信息已写入 {path}")


# 全局服务实例
export_service = ExportService()
