"""CLI 运行配置

RunConfig 在任何计算开始前完成全部校验，所有问题一次性收集进 ConfigError。
"""

from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.config import settings
from src.errors import ConfigError
from src.model.models import ComplexValue, HamiltonianSpec

COMMANDS = ("build", "spectrum", "sweep", "domains", "ep", "metric", "verify")
EP_ACTIONS = ("locate", "closed-form", "certify")
METRIC_ACTIONS = ("recurrent", "spectral", "positivity", "dyson")
XI_TOKEN = "xi"


class RunConfig(BaseModel):
    """一次 CLI 调用的完整参数"""

    model_config = ConfigDict(extra="forbid")

    command: Literal["build", "spectrum", "sweep", "domains", "ep", "metric", "verify"]
    action: Optional[str] = Field(default=None, description="ep / metric 的子命令")
    model: Optional[HamiltonianSpec] = Field(default=None, description="哈密顿量参数")
    param: Literal["q", "r", "s", "u"] = Field(default="s", description="扫描参数")
    lo: float = Field(default=settings.default_lo, description="扫描窗口下界")
    hi: float = Field(default=settings.default_hi, description="扫描窗口上界")
    n_points: int = Field(default=settings.default_n_points, description="网格点数")
    first_row: Optional[list[str]] = Field(default=None, description="度规首行, 可含 xi")
    kappa_sq: Optional[list[float]] = Field(default=None, description="谱展开权重 κ²")
    xi_seed: float = Field(default=0.0, description="正定区间的种子 ξ₀")
    eps: Optional[ComplexValue] = Field(default=None, description="EP 证书的能量")
    exact: bool = Field(default=False, description="有理精确路径")
    experimental: bool = Field(default=False, description="允许复矩阵的递推度规")
    vectors: bool = Field(default=False, description="输出本征向量")
    format: Literal["json", "csv"] = Field(default="json", description="输出格式")
    out: Optional[str] = Field(default=None, description="输出文件 (默认标准输出)")
    seed: int = Field(default=0, description="随机种子")

    @property
    def dimension(self) -> Optional[int]:
        return None if self.model is None else self.model.dimension

    def first_row_values(self, xi: Fraction = Fraction(0)) -> list[Fraction]:
        """解析首行; xi 记号取给定值"""
        return [xi if entry == XI_TOKEN else Fraction(entry) for entry in self.first_row or []]

    def first_row_template(self) -> tuple[list[Fraction], list[Fraction]]:
        """首行拆成 base + ξ·direction"""
        base = [Fraction(0) if e == XI_TOKEN else Fraction(e) for e in self.first_row or []]
        direction = [Fraction(1) if e == XI_TOKEN else Fraction(0) for e in self.first_row or []]
        return base, direction


def _needs_model(cfg: RunConfig) -> bool:
    if cfg.command == "verify":
        return False
    return not (cfg.command == "ep" and cfg.action == "closed-form")


def _model_problems(spec: HamiltonianSpec) -> list[str]:
    problems = []
    if spec.is_preset:
        return problems
    if spec.M is None:
        problems.append("model.M: explicit model requires --M")
        return problems
    if spec.w is None:
        problems.append("model.w: explicit model requires --w")
    elif len(spec.w) != spec.M:
        problems.append(f"model.w: expected M = {spec.M} entries, got {len(spec.w)}")
    if spec.preset == "general":
        if spec.v is None:
            problems.append("model.v: general model requires --v")
        elif len(spec.v) != spec.M:
            problems.append(f"model.v: expected M = {spec.M} entries, got {len(spec.v)}")
    elif spec.v is not None:
        problems.append("model.v: ma model fixes v = (−1, 0, …), do not pass --v")
    if spec.preset == "ma" and spec.w is not None and any(z.imag != 0 for z in spec.w):
        problems.append("model.w: ma model requires real couplings")
    return problems


def _parse_problems(cfg: RunConfig) -> list[str]:
    problems = []
    n = cfg.dimension
    if cfg.first_row is not None:
        for entry in cfg.first_row:
            if entry == XI_TOKEN:
                continue
            try:
                Fraction(entry)
            except (ValueError, ZeroDivisionError):
                problems.append(f"first_row: cannot parse {entry!r} as a rational number")
        if n is not None and len(cfg.first_row) != n:
            problems.append(f"first_row: expected N = {n} entries, got {len(cfg.first_row)}")
    if cfg.kappa_sq is not None:
        if any(k <= 0 for k in cfg.kappa_sq):
            problems.append("kappa_sq: all entries must be positive")
        if n is not None and len(cfg.kappa_sq) != n:
            problems.append(f"kappa_sq: expected N = {n} entries, got {len(cfg.kappa_sq)}")
    return problems


def _command_problems(cfg: RunConfig) -> list[str]:
    problems = []
    if cfg.command == "ep" and cfg.action not in EP_ACTIONS:
        problems.append(f"action: ep expects one of {EP_ACTIONS}, got {cfg.action!r}")
    if cfg.command == "metric" and cfg.action not in METRIC_ACTIONS:
        problems.append(f"action: metric expects one of {METRIC_ACTIONS}, got {cfg.action!r}")
    if cfg.command in ("sweep", "domains") or cfg.action in ("locate", "positivity"):
        if not cfg.lo < cfg.hi:
            problems.append(f"lo/hi: expected lo < hi, got lo = {cfg.lo}, hi = {cfg.hi}")
        if cfg.n_points < 2:
            problems.append(f"n_points: expected ≥ 2, got {cfg.n_points}")
    if cfg.action == "recurrent" and cfg.first_row is None:
        problems.append("first_row: metric recurrent requires --first-row")
    if cfg.action != "positivity" and cfg.first_row and XI_TOKEN in cfg.first_row:
        label = " ".join(x for x in (cfg.command, cfg.action) if x)
        problems.append(f"first_row: {label} needs numeric entries (xi is for positivity)")
    if cfg.action == "positivity":
        if cfg.first_row is None and cfg.dimension != 5:
            problems.append("first_row: positivity needs --first-row with an xi entry unless N = 5")
        elif cfg.first_row is not None and XI_TOKEN not in cfg.first_row:
            problems.append("first_row: positivity needs an xi entry in --first-row")
        if not cfg.lo < cfg.xi_seed < cfg.hi:
            problems.append(f"xi_seed: must lie inside ({cfg.lo}, {cfg.hi})")
    if cfg.action == "certify" and cfg.eps is None:
        problems.append("eps: ep certify requires --eps")
    if cfg.format == "csv" and cfg.command not in ("sweep", "spectrum") and cfg.action != "positivity":
        problems.append(f"format: csv is only available for tabular outputs, not {cfg.command}")
    return problems


def validate_config(raw: dict) -> RunConfig:
    """原始参数 (CLI 或 JSON) → RunConfig; 每个出错字段一条消息"""
    try:
        cfg = RunConfig.model_validate(raw)
    except ValidationError as e:
        problems = [
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        ]
        raise ConfigError(problems) from e

    problems: list[str] = []
    if _needs_model(cfg) and cfg.model is None:
        problems.append(
            "model: either --preset (hami5, hami7, hami27, dim5) or an explicit model "
            "(--M, --u, --w, --v) is required"
        )
    if cfg.model is not None:
        problems.extend(_model_problems(cfg.model))
    problems.extend(_parse_problems(cfg))
    problems.extend(_command_problems(cfg))
    if problems:
        raise ConfigError(problems)
    return cfg
