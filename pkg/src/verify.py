"""黄金值校验套件

每项检查复现一个已知数值结果，返回 (是否通过, 说明)。CLI 的 verify 子命令打印结果表。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from loguru import logger

from src.errors import PTSpectraError
from src.linalg.dense import eig_general
from src.linalg.polynomial import char_poly
from src.metric.recurrent import metric_recurrent
from src.model.builder import build, build_preset, parity_matrix
from src.model.models import HamiltonianSpec
from src.scan.exceptional import certify_interior_ep, s_ep_closed_form
from src.scan.sweep import domain_report, locate_reality_boundary
from src.spectrum.chebyshev import chebyshev_eig
from src.spectrum.solver import full_spectrum

S_EP = 0.5242106130
SPARSE_EIGENVALUES = (0.1704659382, 0.4862291155, 1.0, 1.374374593, 2.468930353)
SPARSE_CHAR_POLY = (
    Fraction(-9, 32),
    Fraction(181, 64),
    Fraction(-547, 64),
    Fraction(21, 2),
    Fraction(-11, 2),
    Fraction(1),
)


@dataclass(frozen=True)
class VerificationRow:
    name: str
    passed: bool
    detail: str


def hami5_quintic(s: Fraction) -> tuple:
    """λ⁵ + (2s² − 7/2)λ³ − 2sλ² + (5/2 − 2s²)λ + 2s，升幂"""
    return (2 * s, Fraction(5, 2) - 2 * s**2, -2 * s, 2 * s**2 - Fraction(7, 2), Fraction(0), Fraction(1))


def check_quintic() -> tuple[bool, str]:
    for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
        poly = char_poly(build_preset("hami5", r=Fraction(1, 2), s=s, exact=True))
        if poly.coefficients != hami5_quintic(s):
            return False, f"mismatch at s = {s}: {poly.to_list()}"
    return True, "exact at s ∈ {0, 1/4, 1/2}"


def check_closed_form() -> tuple[bool, str]:
    value = s_ep_closed_form()
    return abs(value - S_EP) <= 1e-9, f"s_EP = {value:.12f}"


def check_reality_boundary() -> tuple[bool, str]:
    template = HamiltonianSpec(preset="hami5", r=0.5)
    right = locate_reality_boundary(template, "s", (0.4, 0.7))
    left = locate_reality_boundary(template, "s", (-0.7, -0.4))
    closed = s_ep_closed_form()
    ok = abs(right - closed) <= 1e-6 and abs(left + closed) <= 1e-6
    return ok, f"bisection ({left:.10f}, {right:.10f})"


def check_interior_ep() -> tuple[bool, str]:
    for s, eps in ((0.5, -1.0), (-0.5, 1.0)):
        cert = certify_interior_ep(build_preset("hami5", r=0.5, s=s), eps, param_value=s)
        if cert.geometric_multiplicity != 1 or cert.jordan_block_size != 2:
            return False, f"s = {s}: geometric {cert.geometric_multiplicity}, jordan {cert.jordan_block_size}"
    return True, "2×2 Jordan blocks at s = ±1/2"


def check_sparse_metric() -> tuple[bool, str]:
    h = build_preset("dim5", r=Fraction(1, 2), s=Fraction(0), exact=True)
    cand = metric_recurrent(h, [1, 0, 0, 0, 0])
    if char_poly(cand.theta_exact).coefficients != SPARSE_CHAR_POLY:
        return False, "secular polynomial of Θ differs"
    err = float(np.max(np.abs(cand.eigenvalues - np.array(SPARSE_EIGENVALUES))))
    return err <= 1e-8, f"max eigenvalue error {err:.2e}"


def check_hami5_domains() -> tuple[bool, str]:
    report = domain_report(HamiltonianSpec(preset="hami5", r=0.5), "s", -0.8, 0.8, 161)
    closed = s_ep_closed_form()
    expected = [(-closed, -0.5), (-0.5, 0.5), (0.5, closed)]
    if len(report.intervals) != 3:
        return False, f"{len(report.intervals)} intervals"
    err = max(abs(a - b) for iv, ex in zip(report.intervals, expected) for a, b in zip(iv, ex))
    return err <= 1e-6, f"3 intervals, endpoint error {err:.2e}"


def check_hami27_domains() -> tuple[bool, str]:
    counts = []
    for q, expected in ((-1 / 15, 3), (1 / 100, 4)):
        report = domain_report(HamiltonianSpec(preset="hami27", q=q, r=0.5), "s", -1.2, 1.2, 481)
        counts.append(len(report.intervals))
        if len(report.intervals) != expected:
            return False, f"q = {q:.4g}: {len(report.intervals)} intervals, expected {expected}"
    return True, f"interval counts {counts}"


def check_hami7_domains() -> tuple[bool, str]:
    report = domain_report(HamiltonianSpec(preset="hami7", q=1 / 3, r=0.5), "s", -1.2, 1.2, 481)
    return len(report.intervals) == 4, f"{len(report.intervals)} intervals at q = 1/3"


def check_random_models(seed: int, count: int = 50) -> tuple[bool, str]:
    """正留数随机模型: 约化谱与稠密特征值一致"""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        M = int(rng.integers(2, 5))
        _, u_d = chebyshev_eig(M)
        alpha = rng.uniform(0.2, 1.0, M) * np.exp(1j * rng.uniform(0, 2 * np.pi, M))
        beta = alpha * rng.uniform(0.5, 2.0, M)
        spec = HamiltonianSpec(
            M=M,
            u=float(rng.uniform(-1, 1)),
            w=list(parity_matrix(M) @ u_d.T @ alpha),
            v=list(u_d.T @ beta),
        )
        h = build(spec)
        reduced = np.sort(full_spectrum(h, M).energies.real)
        dense = np.sort(eig_general(h).eigenvalues.real)
        worst = max(worst, float(np.max(np.abs(reduced - dense))))
    return worst <= 1e-8, f"{count} models, seed {seed}, max deviation {worst:.2e}"


GOLDEN_CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("hami5 secular quintic", check_quintic),
    ("closed-form s_EP", check_closed_form),
    ("reality boundary bisection", check_reality_boundary),
    ("interior EP certificates", check_interior_ep),
    ("sparse first-row metric", check_sparse_metric),
    ("hami5 domains", check_hami5_domains),
    ("hami27 domains", check_hami27_domains),
    ("hami7 domains", check_hami7_domains),
]


def run_golden_suite(seed: int = 0) -> list[VerificationRow]:
    rows = []
    checks = GOLDEN_CHECKS + [("random reduced vs dense", lambda: check_random_models(seed))]
    for name, check in checks:
        try:
            passed, detail = check()
        except PTSpectraError as e:
            passed, detail = False, f"{e.name}: {e}"
        logger.info(f"[verify] {name}: {'PASS' if passed else 'FAIL'} ({detail})")
        rows.append(VerificationRow(name, passed, detail))
    return rows


def format_table(rows: list[VerificationRow]) -> str:
    width = max(len(r.name) for r in rows)
    lines = [f"{'check':<{width}}  result  detail", f"{'-' * width}  ------  ------"]
    for r in rows:
        lines.append(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.detail}")
    passed = sum(r.passed for r in rows)
    lines.append(f"{passed}/{len(rows)} passed")
    return "\n".join(lines) + "\n"
