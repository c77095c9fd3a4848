"""稠密小矩阵内核

所有 H、Θ、P、U 都以 numpy 二维数组承载:
- 数值路径: float64 / complex128
- 精确路径: dtype=object，元素为 fractions.Fraction

特征分解走 LAPACK (scipy.linalg)，本模块负责排序、归一化和残差校验。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
import scipy.linalg
from loguru import logger

from src.config import settings
from src.errors import (
    IterationLimitExceeded,
    NonSquare,
    NotHermitian,
    NotPositiveDefinite,
    Singular,
)

Matrix = np.ndarray


def require_square(m) -> np.ndarray:
    """校验方阵并返回数组视图"""
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NonSquare(f"expected a non-empty square matrix, got shape {arr.shape}")
    return arr


def is_exact(m) -> bool:
    """object 数组且元素全为有理数"""
    arr = np.asarray(m)
    if arr.dtype != object:
        return False
    return all(isinstance(x, (int, Fraction)) for x in arr.flat)


def exact_matrix(rows) -> np.ndarray:
    """把实数 (int/float/Fraction/str) 二维列表转换为 Fraction 矩阵"""
    arr = np.asarray(rows, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = _to_fraction(x)
    return out


def _to_fraction(x) -> Fraction:
    if isinstance(x, (complex, np.complexfloating)):
        if x.imag != 0:
            raise ValueError(f"exact path needs real entries, got {x}")
        x = x.real
    if isinstance(x, np.floating):
        x = float(x)
    if isinstance(x, np.integer):
        x = int(x)
    return Fraction(x)


def to_numeric(m) -> np.ndarray:
    """object 矩阵转为 float64 (实) 或 complex128"""
    arr = np.asarray(m)
    if arr.dtype != object:
        return arr
    try:
        return arr.astype(float)
    except TypeError:
        return arr.astype(complex)


def frobenius(m) -> float:
    return float(np.linalg.norm(to_numeric(m)))


def adjoint(m) -> np.ndarray:
    """共轭转置 (object 矩阵同样适用)"""
    arr = np.asarray(m)
    return np.conj(arr).T


def max_abs(m) -> float:
    arr = to_numeric(m)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def hermitian_defect(m) -> float:
    """max |m − m†|"""
    arr = to_numeric(m)
    return max_abs(arr - arr.conj().T)


def is_real(m) -> bool:
    arr = to_numeric(m)
    return not np.iscomplexobj(arr) or not np.any(arr.imag)


def spectral_order(values: np.ndarray) -> np.ndarray:
    """按 (实部, 虚部) 升序的确定性排列

    实部先舍入到 1e-12 量级，使共轭对按虚部稳定排序。
    """
    values = np.asarray(values, dtype=complex)
    return np.lexsort((values.imag, np.round(values.real, 12)))


def _unit_columns(vectors: np.ndarray) -> np.ndarray:
    """列向量单位化，并把模最大的分量转成正实数"""
    out = np.array(vectors, dtype=complex)
    for j in range(out.shape[1]):
        col = out[:, j]
        col /= np.linalg.norm(col)
        k = int(np.argmax(np.abs(col)))
        phase = col[k] / abs(col[k])
        out[:, j] = col / phase
    return out


@dataclass(frozen=True)
class EigenDecomposition:
    """完整特征分解

    eigenvalues 按 (实部, 虚部) 升序，right_vectors 的第 j 列对应第 j 个本征值。
    left_vectors (可选) 是 H† 的本征向量，同样按列对齐。
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    residual: float
    left_vectors: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    def condition_numbers(self) -> np.ndarray:
        """本征值条件数 1 / |⟨L_j|R_j⟩| (单位向量)"""
        if self.left_vectors is None:
            raise ValueError("left vectors were not computed")
        overlaps = np.abs(np.sum(self.left_vectors.conj() * self.right_vectors, axis=0))
        with np.errstate(divide="ignore"):
            return np.where(overlaps > 0, 1.0 / overlaps, np.inf)


def _pair_residual(a: np.ndarray, values: np.ndarray, vectors: np.ndarray) -> float:
    scale = max(1.0, float(np.linalg.norm(a)))
    diff = a @ vectors - vectors * values[np.newaxis, :]
    return float(np.max(np.linalg.norm(diff, axis=0))) / scale


def eig_general(m, left: bool = False) -> EigenDecomposition:
    """一般方阵的全部本征对 (LAPACK geev: Hessenberg 约化 + 位移 QR)"""
    a = to_numeric(require_square(m))
    try:
        if left:
            values, vl, vr = scipy.linalg.eig(a, left=True, right=True)
        else:
            values, vr = scipy.linalg.eig(a)
            vl = None
    except np.linalg.LinAlgError as e:
        raise IterationLimitExceeded(f"QR iteration did not converge: {e}") from e

    order = spectral_order(values)
    values = np.asarray(values, dtype=complex)[order]
    vr = _unit_columns(vr[:, order])
    if vl is not None:
        vl = _unit_columns(vl[:, order])

    residual = _pair_residual(a, values, vr)
    if residual > settings.tol_eig:
        logger.warning(f"eig_general residual {residual:.3e} exceeds tol_eig")
    return EigenDecomposition(values, vr, residual, vl)


def eig_symmetric(m, tol: Optional[float] = None) -> EigenDecomposition:
    """Hermitian 矩阵的实特征值 (升序) 与正交归一本征向量"""
    a = to_numeric(require_square(m))
    tol = settings.tol_hermitian if tol is None else tol
    defect = hermitian_defect(a)
    if defect > tol:
        raise NotHermitian(f"entrywise asymmetry {defect:.3e} exceeds {tol:.1e}")
    a = (a + a.conj().T) / 2
    try:
        values, vectors = scipy.linalg.eigh(a)
    except np.linalg.LinAlgError as e:
        raise IterationLimitExceeded(f"symmetric eigensolver failed: {e}") from e
    residual = _pair_residual(a, values.astype(complex), vectors)
    return EigenDecomposition(np.asarray(values, dtype=float), vectors, residual)


def solve_linear(a, b) -> np.ndarray:
    """LU (部分主元) 求解 a·x = b"""
    mat = to_numeric(require_square(a))
    rhs = np.asarray(to_numeric(np.asarray(b)))
    norm_a = float(np.linalg.norm(mat))
    lu, piv = scipy.linalg.lu_factor(mat, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= settings.pivot_tol * norm_a:
        raise Singular(f"pivot {pivots.min():.3e} below {settings.pivot_tol:.0e}·‖a‖_F")
    x = scipy.linalg.lu_solve((lu, piv), rhs)

    defect = float(np.linalg.norm(mat @ x - rhs))
    bound = settings.tol_solve * max(1.0, norm_a * float(np.linalg.norm(x)) + float(np.linalg.norm(rhs)))
    if defect > bound:
        raise Singular(f"solution residual {defect:.3e} exceeds {bound:.3e}")
    return x


def sqrt_psd(m) -> np.ndarray:
    """正定 Hermitian 矩阵的 Hermitian 正定平方根"""
    dec = eig_symmetric(m)
    if dec.eigenvalues.min() <= settings.tol_psd:
        raise NotPositiveDefinite(
            f"minimum eigenvalue {dec.eigenvalues.min():.3e} is not positive"
        )
    v = dec.right_vectors
    root = (v * np.sqrt(dec.eigenvalues)[np.newaxis, :]) @ v.conj().T
    a = to_numeric(m)
    if not np.iscomplexobj(a):
        root = root.real
    defect = float(np.linalg.norm(root @ root - a))
    if defect > 1e-10 * max(1.0, float(np.linalg.norm(a))):
        logger.warning(f"sqrt_psd residual {defect:.3e} is large")
    return root
