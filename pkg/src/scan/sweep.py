"""参数扫描、实性边界二分与物理域报告

网格点彼此独立，用线程池并行求谱，结果按网格下标合并。
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from loguru import logger
from scipy.optimize import brentq, linear_sum_assignment

from src.config import settings
from src.errors import NoSignChange, NotDegenerate
from src.linalg.dense import eig_general
from src.model.builder import build
from src.model.models import HamiltonianSpec
from src.scan.exceptional import certify_interior_ep
from src.scan.models import (
    BOUNDARY_INTERIOR,
    BOUNDARY_REALITY,
    Boundary,
    DomainReport,
    EPCertificate,
    SweepResult,
)
from src.spectrum.models import REALITY_COMPLEX, ReducedModel
from src.spectrum.solver import classify_reality


def _point(template: HamiltonianSpec, param: str, value: float) -> tuple[np.ndarray, str]:
    h = build(template.with_param(param, value))
    dec = eig_general(h, left=True)
    return dec.eigenvalues, classify_reality(h, dec)


def _is_real_at(template: HamiltonianSpec, param: str, value: float) -> bool:
    return _point(template, param, value)[1] != REALITY_COMPLEX


def sweep_spectrum(
    template: HamiltonianSpec,
    param: str,
    lo: float,
    hi: float,
    n_points: int,
    workers: Optional[int] = None,
) -> SweepResult:
    if n_points < 2:
        raise ValueError(f"n_points must be ≥ 2, got {n_points}")
    if not lo < hi:
        raise ValueError(f"expected lo < hi, got [{lo}, {hi}]")
    grid = np.linspace(lo, hi, n_points)
    workers = workers or settings.worker_count

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda x: _point(template, param, x), grid))

    energies = np.array([values for values, _ in results])
    reality = [flag for _, flag in results]
    logger.info(
        f"sweep {param} ∈ [{lo}, {hi}] ({n_points} points): "
        f"{sum(f != REALITY_COMPLEX for f in reality)} real points"
    )
    return SweepResult(param, grid, energies, reality)


def locate_reality_boundary(
    template: HamiltonianSpec,
    param: str,
    bracket: tuple[float, float],
    tol: Optional[float] = None,
) -> float:
    """在实谱谓词上二分，返回边界区间中点"""
    tol = settings.bisect_tol if tol is None else tol
    a, b = float(bracket[0]), float(bracket[1])
    fa = _is_real_at(template, param, a)
    fb = _is_real_at(template, param, b)
    if fa == fb:
        raise NoSignChange(f"spectrum reality is the same at both ends of [{a}, {b}]")
    for _ in range(settings.bisect_max_iter):
        if abs(b - a) <= tol:
            break
        mid = 0.5 * (a + b)
        if _is_real_at(template, param, mid) == fa:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def _residues_at(template: HamiltonianSpec, param: str, value: float, M: int) -> np.ndarray:
    return ReducedModel.from_hamiltonian(build(template.with_param(param, value)), M).residues


def _interior_crossings(
    template: HamiltonianSpec,
    param: str,
    grid: np.ndarray,
    lo: float,
    hi: float,
) -> list[EPCertificate]:
    """留数 c_j(param) 在 (lo, hi) 内变号处的 Jordan 证书

    z=1 根只有在对应留数为零时才能穿过极点 d̂_j。
    """
    M = template.half_dimension
    points = [lo] + [x for x in grid if lo < x < hi] + [hi]
    residues = np.array([_residues_at(template, param, x, M) for x in points])
    d = ReducedModel.from_hamiltonian(build(template.with_param(param, lo)), M).d
    scale = max(1.0, float(np.max(np.abs(residues))))
    zero_tol = settings.tol_pole * scale

    candidates: list[tuple[float, int]] = []
    for j in range(M):
        c = residues[:, j]
        for k in range(len(points) - 1):
            ca, cb = c[k], c[k + 1]
            if abs(ca) <= zero_tol or abs(cb) <= zero_tol:
                if abs(ca) <= zero_tol and 0 < k:
                    candidates.append((points[k], j))
                continue
            if ca * cb < 0:
                root = brentq(
                    lambda x: _residues_at(template, param, x, M)[j],
                    points[k],
                    points[k + 1],
                    xtol=1e-14,
                )
                candidates.append((root, j))

    certificates = []
    for value, j in sorted(candidates):
        h = build(template.with_param(param, value))
        values = eig_general(h).eigenvalues
        dist = np.sort(np.abs(values - d[j]))
        if dist[1] > settings.collision_tol:
            logger.debug(f"residue zero at {param}={value:.10g} without eigenvalue collision")
            continue
        try:
            cert = certify_interior_ep(h, d[j], param_value=float(value))
        except NotDegenerate:
            continue
        if cert.certified:
            certificates.append(cert)
        else:
            logger.warning(f"collision at {param}={value:.10g} is not defective, rejected")
    return certificates


def domain_report(
    template: HamiltonianSpec,
    param: str,
    lo: float,
    hi: float,
    n_points: int,
) -> DomainReport:
    """全实非简并谱的最大开区间，边界经二分细化，内部 EP 穿越处拆分"""
    sweep = sweep_spectrum(template, param, lo, hi, n_points)
    grid = sweep.grid
    real = [flag != REALITY_COMPLEX for flag in sweep.reality]

    runs: list[tuple[int, int]] = []
    start = None
    for i, ok in enumerate(real):
        if ok and start is None:
            start = i
        if not ok and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(grid) - 1))

    intervals: list[tuple[float, float]] = []
    boundaries: list[Boundary] = []
    gaps: list[tuple[float, float]] = []
    certificates: list[EPCertificate] = []
    previous_right: Optional[float] = None

    for i0, i1 in runs:
        if i0 > 0:
            left = locate_reality_boundary(template, param, (grid[i0 - 1], grid[i0]))
            boundaries.append(Boundary(left, BOUNDARY_REALITY))
        else:
            left = float(lo)
        if i1 < len(grid) - 1:
            right = locate_reality_boundary(template, param, (grid[i1], grid[i1 + 1]))
        else:
            right = float(hi)

        if previous_right is not None:
            gaps.append((previous_right, left))

        inner = _interior_crossings(template, param, grid, left, right)
        certificates.extend(inner)
        edges = [left] + [c.param_value for c in inner] + [right]
        for a, b in zip(edges[:-1], edges[1:]):
            intervals.append((a, b))
        boundaries.extend(Boundary(c.param_value, BOUNDARY_INTERIOR) for c in inner)

        if i1 < len(grid) - 1:
            boundaries.append(Boundary(right, BOUNDARY_REALITY))
        previous_right = right

    logger.info(
        f"domain report {param} ∈ [{lo}, {hi}]: {len(intervals)} intervals, {len(gaps)} gaps"
    )
    return DomainReport(param, (float(lo), float(hi)), intervals, boundaries, gaps, certificates)


def track_branches(sweep: SweepResult) -> np.ndarray:
    """相邻网格点之间按最小总距离匹配本征值，仅用于绘图连续性"""
    tracked = np.array(sweep.energies, dtype=complex)
    for k in range(1, len(tracked)):
        cost = np.abs(tracked[k - 1][:, np.newaxis] - sweep.energies[k][np.newaxis, :])
        _, cols = linear_sum_assignment(cost)
        tracked[k] = sweep.energies[k][cols]
    return tracked
