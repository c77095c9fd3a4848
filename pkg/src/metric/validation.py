"""度规校验: 准厄米残差、正定性、Dyson 映射、可观测量条件、基变换"""

from typing import Optional

import numpy as np

from src.config import settings
from src.errors import ShapeMismatch
from src.linalg.dense import eig_symmetric, is_exact, solve_linear, sqrt_psd, to_numeric
from src.metric.models import DysonMap
from src.model.basis import partition_unitary


def _check_shapes(a, b) -> tuple[np.ndarray, np.ndarray]:
    x, y = np.asarray(a), np.asarray(b)
    if x.ndim != 2 or x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise ShapeMismatch(f"shapes {x.shape} and {y.shape} do not match")
    return x, y


def _relation_defect(op, theta) -> float:
    """‖op†Θ − Θop‖_max, 两者都是有理矩阵时精确计算"""
    op, theta = _check_shapes(op, theta)
    if is_exact(op) and is_exact(theta):
        defect = op.T @ theta - theta @ op
        return float(max(abs(x) for x in defect.flat))
    a, t = to_numeric(op), to_numeric(theta)
    return float(np.max(np.abs(a.conj().T @ t - t @ a)))


def quasi_hermiticity_residual(h, theta) -> float:
    return _relation_defect(h, theta)


def observable_check(lam, theta) -> float:
    """Λ†Θ = ΘΛ 的残差; 0 表示 Λ 是相容的可观测量"""
    return _relation_defect(lam, theta)


def positivity_check(theta, tol: Optional[float] = None) -> tuple[bool, np.ndarray]:
    tol = settings.pd_tol if tol is None else tol
    eigenvalues = eig_symmetric(theta).eigenvalues
    return bool(eigenvalues.min() > tol), eigenvalues


def dyson_map(theta) -> DysonMap:
    """Ω = Θ^{1/2} (Hermitian 分支)，Θ = Ω†Ω"""
    t = to_numeric(theta)
    omega = sqrt_psd(t)
    identity = np.eye(t.shape[0])
    omega_inverse = solve_linear(omega, identity)
    residual = float(np.linalg.norm(omega.conj().T @ omega - t))
    return DysonMap(omega, omega_inverse, residual)


def metric_basis_map(theta, M: int, direction: str = "forward") -> np.ndarray:
    """forward: 𝒰Θ𝒰†; inverse: 𝒰†Θ𝒰"""
    t = to_numeric(theta)
    if t.ndim != 2 or t.shape != (2 * M + 1, 2 * M + 1):
        raise ShapeMismatch(f"metric shape {t.shape} does not match N = {2 * M + 1}")
    unitary = partition_unitary(M)
    if direction == "forward":
        return unitary @ t @ unitary.T
    if direction == "inverse":
        return unitary.T @ t @ unitary
    raise ValueError(f"unknown direction {direction!r}, expected 'forward' or 'inverse'")


def inner_product(theta, a, b) -> complex:
    """度规内积 ⟨a|Θ|b⟩"""
    t = to_numeric(theta)
    x, y = np.asarray(a), np.asarray(b)
    if x.shape != (t.shape[0],) or y.shape != (t.shape[0],):
        raise ShapeMismatch(f"vectors {x.shape}, {y.shape} do not match metric {t.shape}")
    return complex(np.conj(x) @ t @ y)
