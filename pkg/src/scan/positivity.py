"""首行参数 ξ 上的度规正定区间

首行取 base + ξ·direction；递推构造对首行线性，Θ(ξ) = Θ(base) + ξ·Θ(direction)。
"""

from typing import Optional, Sequence

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from src.config import settings
from src.errors import SeedNotPositive
from src.linalg.dense import eig_symmetric
from src.metric.recurrent import metric_recurrent
from src.scan.models import PositivityInterval


def sparse_first_row(n: int = 5) -> tuple[list[int], list[int]]:
    """稀疏首行 (1, 0, ξ, 0, …) 的 base 与 direction"""
    base = [1] + [0] * (n - 1)
    direction = [0, 0, 1] + [0] * (n - 3)
    return base, direction


def metric_positivity_interval(
    h,
    base_row: Sequence,
    direction: Sequence,
    lo: float,
    hi: float,
    n_points: int,
    seed: float = 0.0,
    experimental: bool = False,
) -> PositivityInterval:
    """包含 seed 的最大正定开区间 (窗口内)，端点用 brentq 细化到 xi_bisect_tol"""
    if not lo < seed < hi:
        raise ValueError(f"seed {seed} must lie inside the window ({lo}, {hi})")
    theta0 = metric_recurrent(h, base_row, experimental=experimental).theta
    theta1 = metric_recurrent(h, direction, experimental=experimental).theta

    def eigenvalues(xi: float) -> np.ndarray:
        return eig_symmetric(theta0 + xi * theta1).eigenvalues

    def margin(xi: float) -> float:
        return float(eigenvalues(xi).min()) - settings.pd_tol

    if margin(seed) <= 0:
        raise SeedNotPositive(f"metric candidate is not positive definite at ξ₀ = {seed}")

    grid = np.linspace(lo, hi, n_points)
    curves = np.array([eigenvalues(x) for x in grid])
    margins = curves.min(axis=1) - settings.pd_tol

    below = grid[(grid < seed) & (margins <= 0)]
    if below.size:
        outside = float(below.max())
        inside = min([x for x in grid if outside < x <= seed] + [seed])
        left = brentq(margin, outside, inside, xtol=settings.xi_bisect_tol)
    else:
        left = float(lo)

    above = grid[(grid > seed) & (margins <= 0)]
    if above.size:
        outside = float(above.min())
        inside = max([x for x in grid if seed <= x < outside] + [seed])
        right = brentq(margin, inside, outside, xtol=settings.xi_bisect_tol)
    else:
        right = float(hi)

    logger.info(f"metric positive for ξ ∈ ({left:.10g}, {right:.10g}) around seed {seed}")
    return PositivityInterval(
        lo=float(left),
        hi=float(right),
        seed=float(seed),
        bounded_below=bool(below.size),
        bounded_above=bool(above.size),
        grid=grid,
        eigencurves=curves,
    )
