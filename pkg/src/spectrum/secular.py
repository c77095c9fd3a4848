"""久期函数 R(ε) 与 z=1 能级求根

z=1 能级满足 f(ε) = ε − u − R(ε) = 0，R(ε) = Σ c_i / (ε − d̂_i)，c_i = 2Re(α_i β̄_i)。
留数接近零的极点可去，不参与区间划分。
"""

from typing import Optional

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from src.config import settings
from src.errors import AtPole
from src.spectrum.models import ReducedModel

POLE_GUARD = 1e-13


def secular_R(rm: ReducedModel, eps: float) -> float:
    """R(ε)，在极点处抛出 AtPole"""
    gaps = eps - rm.d
    if np.min(np.abs(gaps)) <= POLE_GUARD:
        raise AtPole(f"ε = {eps} coincides with a pole of R")
    terms = (np.conj(rm.beta) * rm.alpha + np.conj(rm.alpha) * rm.beta) / gaps
    value = complex(np.sum(terms))
    if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
        logger.warning(f"R({eps}) has imaginary part {value.imag:.3e}")
    return value.real


def secular_function(rm: ReducedModel, eps: float) -> float:
    """f(ε) = ε − u − R(ε)"""
    return eps - rm.u - secular_R(rm, eps)


def secular_determinant(rm: ReducedModel, eps: complex) -> complex:
    """det(ε − H^(PT)) = Π(ε − d̂)·[(ε − u)Π(ε − d̂) − Σ c_i Π_{k≠i}(ε − d̂_k)]"""
    gaps = eps - rm.d
    full = np.prod(gaps)
    partial = sum(c * np.prod(np.delete(gaps, i)) for i, c in enumerate(rm.residues))
    return full * ((eps - rm.u) * full - partial)


def active_poles(rm: ReducedModel, tol: Optional[float] = None) -> tuple[np.ndarray, np.ndarray]:
    """留数不可忽略的极点及其留数"""
    tol = settings.tol_pole if tol is None else tol
    res = rm.residues
    scale = max(1.0, float(np.max(np.abs(res)))) if len(res) else 1.0
    keep = np.abs(res) > tol * scale
    return rm.d[keep], res[keep]


def scan_bound(rm: ReducedModel) -> float:
    """根的外侧界: |u| + Σ|c| + 2·max|d̂| + 2"""
    return abs(rm.u) + float(np.sum(np.abs(rm.residues))) + 2.0 * float(np.max(np.abs(rm.d))) + 2.0


def _interval_samples(a: float, b: float, n: int) -> np.ndarray:
    """区间内 Chebyshev 采样, 外加端点附近的几何加密点"""
    t = 0.5 * (1.0 - np.cos(np.pi * (np.arange(n) + 0.5) / n))
    near = np.array([10.0 ** (-k) for k in range(4, 11)])
    rel = np.concatenate([near, t, 1.0 - near])
    return np.unique(a + (b - a) * rel)


def secular_roots(rm: ReducedModel, samples: Optional[int] = None) -> np.ndarray:
    """ε = u + R(ε) 的全部实根 (按极点分段扫描变号 + brentq 细化)"""
    samples = settings.secular_samples if samples is None else samples
    poles, res = active_poles(rm)
    bound = scan_bound(rm)

    def f(x: float) -> float:
        return x - rm.u - float(np.sum(res / (x - poles)))

    edges = np.concatenate([[-bound], np.sort(poles), [bound]])
    roots: list[float] = []
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= POLE_GUARD:
            continue
        xs = _interval_samples(a, b, samples)
        with np.errstate(divide="ignore", invalid="ignore"):
            fs = np.array([f(x) for x in xs])
        for k in range(len(xs) - 1):
            fa, fb = fs[k], fs[k + 1]
            if not (np.isfinite(fa) and np.isfinite(fb)):
                continue
            if fa == 0.0:
                roots.append(float(xs[k]))
            elif fa * fb < 0:
                roots.append(brentq(f, xs[k], xs[k + 1], xtol=settings.secular_root_tol))
        if len(fs) and fs[-1] == 0.0:
            roots.append(float(xs[-1]))

    roots.sort()
    unique: list[float] = []
    for x in roots:
        if not unique or x - unique[-1] > 1e-10:
            unique.append(x)
    if len(unique) < rm.M + 1:
        logger.debug(f"secular scan found {len(unique)} of {rm.M + 1} real z=1 roots")
    return np.array(unique)


def interlaces(roots: np.ndarray, poles: np.ndarray) -> bool:
    """ε₁ < d̂₁ < ε₂ < … < d̂_M < ε_{M+1}"""
    if len(roots) != len(poles) + 1:
        return False
    merged = np.empty(2 * len(poles) + 1)
    merged[0::2] = roots
    merged[1::2] = np.sort(poles)
    return bool(np.all(np.diff(merged) > 0))
