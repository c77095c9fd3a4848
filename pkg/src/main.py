"""PTSpectra 命令行入口

子命令:
- build / spectrum: 构造哈密顿量并求完整谱
- sweep / domains: 参数扫描、实性边界与物理域报告
- ep locate|closed-form|certify: 例外点定位与 Jordan 证书
- metric recurrent|spectral|positivity|dyson: 度规构造与校验
- verify: 黄金值校验套件

退出码: 0 成功, 1 数值错误, 2 参数校验失败。产物写到标准输出或 --out，日志写到标准错误。
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np
from loguru import logger
from pydantic import ValidationError

from src.config import settings
from src.errors import ConfigError, PTSpectraError
from src.export import to_csv, to_json, write_output
from src.linalg.dense import to_numeric
from src.metric.recurrent import metric_recurrent
from src.metric.spectral import metric_spectral
from src.metric.validation import dyson_map, quasi_hermiticity_residual
from src.model.builder import build, check_pt_symmetry
from src.model.models import HamiltonianSpec
from src.run_config import RunConfig, validate_config
from src.scan.exceptional import certify_interior_ep, jordan_chain, s_ep_closed_form
from src.scan.positivity import metric_positivity_interval, sparse_first_row
from src.scan.sweep import domain_report, locate_reality_boundary, sweep_spectrum, track_branches
from src.spectrum.solver import full_spectrum
from src.verify import format_table, run_golden_suite

MODEL_FLAGS = ("preset", "M", "u", "w", "v", "q", "r", "s")
OPTION_FLAGS = (
    "param", "lo", "hi", "n_points", "first_row", "kappa_sq", "xi_seed", "eps",
    "exact", "experimental", "vectors", "format", "out", "seed",
)


_logging_ready = False


def setup_logging(sink=None, level: Optional[str] = None) -> None:
    """日志: 标准错误 (或给定 sink) + 可选的按天滚动文件"""
    global _logging_ready
    logger.remove()
    logger.add(
        sys.stderr if sink is None else sink,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=level or settings.log_level,
    )
    if settings.log_file:
        logger.add(
            settings.log_file,
            rotation="00:00",
            retention="30 days",
            level="DEBUG",
        )
    _logging_ready = True


def _split(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _matrix_payload(h) -> list:
    arr = np.asarray(h)
    if arr.dtype == object:
        return [[str(x) for x in row] for row in arr]
    if np.iscomplexobj(arr):
        return [[[float(z.real), float(z.imag)] for z in row] for row in arr]
    return [[float(x) for x in row] for row in arr]


class PTSpectraApp:
    """按 RunConfig 分派子命令，返回要输出的文本"""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    @property
    def spec(self) -> HamiltonianSpec:
        return self.cfg.model

    @property
    def M(self) -> int:
        return self.spec.half_dimension

    def hamiltonian(self, exact: bool = False):
        return build(self.spec, exact=exact)

    def _rational_model(self) -> bool:
        """实模型才能走 Fraction 精确路径"""
        spec = self.spec.expand()
        couplings = (spec.w or []) + (spec.v or [])
        return not self.cfg.experimental and all(z.imag == 0 for z in couplings)

    def run(self) -> tuple[str, int]:
        cfg = self.cfg
        handler = {
            "build": self.cmd_build,
            "spectrum": self.cmd_spectrum,
            "sweep": self.cmd_sweep,
            "domains": self.cmd_domains,
            "ep": self.cmd_ep,
            "metric": self.cmd_metric,
            "verify": self.cmd_verify,
        }[cfg.command]
        logger.debug(f"running {cfg.command} {cfg.action or ''}".rstrip())
        return handler()

    # ===== 模型与谱 =====

    def cmd_build(self) -> tuple[str, int]:
        h = self.hamiltonian(exact=self.cfg.exact and self._rational_model())
        payload = {
            "model": self.spec.to_json_dict(),
            "N": int(np.asarray(h).shape[0]),
            "matrix": _matrix_payload(h),
            "pt_symmetric": check_pt_symmetry(h),
        }
        return to_json(payload), 0

    def cmd_spectrum(self) -> tuple[str, int]:
        res = full_spectrum(self.hamiltonian(), self.M)
        if self.cfg.format == "csv":
            rows = [[j + 1, z.real, z.imag, fam] for j, (z, fam) in enumerate(zip(res.energies, res.family))]
            return to_csv(["index", "re", "im", "family"], rows), 0
        return to_json(res.to_dict(include_vectors=self.cfg.vectors)), 0

    # ===== 扫描 =====

    def cmd_sweep(self) -> tuple[str, int]:
        cfg = self.cfg
        sweep = sweep_spectrum(self.spec, cfg.param, cfg.lo, cfg.hi, cfg.n_points)
        if cfg.format == "csv":
            return to_csv(sweep.header(), sweep.rows()), 0
        payload = {
            "param": sweep.param_name,
            "window": [cfg.lo, cfg.hi],
            "grid": sweep.grid,
            "energies": sweep.energies,
            "branches": track_branches(sweep),
            "reality": sweep.reality,
        }
        return to_json(payload), 0

    def cmd_domains(self) -> tuple[str, int]:
        cfg = self.cfg
        report = domain_report(self.spec, cfg.param, cfg.lo, cfg.hi, cfg.n_points)
        return to_json(report), 0

    def cmd_ep(self) -> tuple[str, int]:
        cfg = self.cfg
        if cfg.action == "closed-form":
            return to_json({"s_ep": s_ep_closed_form()}), 0
        if cfg.action == "locate":
            value = locate_reality_boundary(self.spec, cfg.param, (cfg.lo, cfg.hi))
            return to_json({"param": cfg.param, "bracket": [cfg.lo, cfg.hi], "boundary": value}), 0
        param_value = getattr(self.spec, cfg.param) if self.spec.is_preset else None
        h = self.hamiltonian()
        cert = certify_interior_ep(h, cfg.eps, param_value=param_value)
        payload = cert.to_dict()
        if cert.certified:
            chain = jordan_chain(h, cfg.eps)
            payload["chain_vector"] = chain.chain_vector
            payload["chain_residual"] = chain.residual
        return to_json(payload), 0

    # ===== 度规 =====

    def _metric(self):
        cfg = self.cfg
        if cfg.first_row is not None:
            exact = self._rational_model()
            return metric_recurrent(
                self.hamiltonian(exact=exact),
                cfg.first_row_values(),
                exact=exact,
                experimental=cfg.experimental,
            )
        return metric_spectral(self.hamiltonian(), self.M, cfg.kappa_sq)

    def cmd_metric(self) -> tuple[str, int]:
        cfg = self.cfg
        if cfg.action == "recurrent":
            return to_json(self._metric()), 0
        if cfg.action == "spectral":
            return to_json(metric_spectral(self.hamiltonian(), self.M, cfg.kappa_sq)), 0
        if cfg.action == "positivity":
            return self._positivity()
        candidate = self._metric()
        dmap = dyson_map(candidate.theta)
        h = to_numeric(self.hamiltonian())
        hermitian_form = dmap.conjugate(h)
        payload = {
            "theta": candidate.theta,
            "omega": dmap.omega,
            "hermitian_form": hermitian_form,
            "factorization_residual": dmap.residual,
            "quasi_hermiticity_residual": quasi_hermiticity_residual(h, candidate.theta),
            "hermiticity_defect": float(np.max(np.abs(hermitian_form - hermitian_form.conj().T))),
        }
        return to_json(payload), 0

    def _positivity(self) -> tuple[str, int]:
        cfg = self.cfg
        if cfg.first_row is None:
            base, direction = sparse_first_row(self.spec.dimension)
        else:
            base, direction = cfg.first_row_template()
        exact = self._rational_model()
        result = metric_positivity_interval(
            self.hamiltonian(exact=exact),
            base,
            direction,
            cfg.lo,
            cfg.hi,
            cfg.n_points,
            seed=cfg.xi_seed,
            experimental=cfg.experimental,
        )
        if cfg.format == "csv":
            return to_csv(result.header(), result.rows()), 0
        payload = result.to_dict()
        payload["eigencurves"] = {"grid": result.grid, "theta": result.eigencurves}
        return to_json(payload), 0

    def cmd_verify(self) -> tuple[str, int]:
        rows = run_golden_suite(self.cfg.seed)
        return format_table(rows), 0 if all(r.passed for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON RunConfig 文件, 命令行参数优先")
    group = common.add_argument_group("model")
    group.add_argument("--preset", help="general | ma | hami5 | hami7 | hami27 | dim5")
    group.add_argument("--M", type=int, help="半维数, N = 2M+1")
    group.add_argument("--u", type=float, help="中心对角元")
    group.add_argument("--w", type=_split, help="w₁,…,w_M (复数写作 1+2j)")
    group.add_argument("--v", type=_split, help="v₁,…,v_M")
    group.add_argument("--q", type=float)
    group.add_argument("--r", type=float)
    group.add_argument("--s", type=float)
    opts = common.add_argument_group("options")
    opts.add_argument("--param", help="扫描参数 q | r | s | u")
    opts.add_argument("--lo", type=float, help="窗口下界 / 二分区间左端")
    opts.add_argument("--hi", type=float, help="窗口上界 / 二分区间右端")
    opts.add_argument("--n", dest="n_points", type=int, help="网格点数")
    opts.add_argument("--first-row", dest="first_row", type=_split, help="度规首行, 如 1,0,xi,0,0")
    opts.add_argument("--kappa-sq", dest="kappa_sq", type=_split, help="κ² 权重")
    opts.add_argument("--xi-seed", dest="xi_seed", type=float, help="正定区间种子 ξ₀")
    opts.add_argument("--eps", help="EP 证书的能量")
    opts.add_argument("--exact", action="store_const", const=True, help="有理精确矩阵")
    opts.add_argument("--experimental", action="store_const", const=True, help="复模型的递推度规")
    opts.add_argument("--vectors", action="store_const", const=True, help="输出本征向量")
    opts.add_argument("--format", choices=["json", "csv"])
    opts.add_argument("--out", help="输出文件")
    opts.add_argument("--seed", type=int, help="随机种子")

    parser = argparse.ArgumentParser(prog="ptspectra", description="PT 对称格点哈密顿量的谱、度规与例外点")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("build", "spectrum", "sweep", "domains", "verify"):
        sub.add_parser(name, parents=[common])
    ep = sub.add_parser("ep").add_subparsers(dest="action", required=True)
    for name in ("locate", "closed-form", "certify"):
        ep.add_parser(name, parents=[common])
    metric = sub.add_parser("metric").add_subparsers(dest="action", required=True)
    for name in ("recurrent", "spectral", "positivity", "dyson"):
        metric.add_parser(name, parents=[common])
    return parser


def raw_config(args: argparse.Namespace) -> dict:
    """命令行参数 (+ --config 文件) → 原始配置字典"""
    raw: dict = {}
    if args.config:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    raw["command"] = args.command
    if getattr(args, "action", None):
        raw["action"] = args.action

    model = dict(raw.get("model") or {})
    for key in MODEL_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            model[key] = value
    if model:
        raw["model"] = model
    for key in OPTION_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    return raw


def run(argv: Optional[list[str]] = None) -> int:
    """解析、校验、执行; 返回退出码"""
    if not _logging_ready:
        setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        cfg = validate_config(raw_config(args))
    except ConfigError as e:
        for problem in e.problems:
            print(f"error: {e.name}: {problem}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: ConfigError: cannot read config file: {e}", file=sys.stderr)
        return 2

    try:
        text, code = PTSpectraApp(cfg).run()
    except PTSpectraError as e:
        print(f"error: {e.name}: {e}", file=sys.stderr)
        return 1
    except ValidationError as e:
        print(f"error: ConfigError: {e}", file=sys.stderr)
        return 2
    write_output(text, cfg.out)
    return code


def main() -> None:
    setup_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
