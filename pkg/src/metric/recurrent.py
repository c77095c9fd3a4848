"""首行递推构造度规

给定 Θ 的第一行，按 ℳ₁₂, ℳ₁₃, …, ℳ₁N, ℳ₂₃, …, ℳ_{N−1,N} 的顺序逐个求解
ℳ = H†Θ − ΘH 的上三角方程，每个方程只引入一个新未知量 Θ_{i+1, j}，
主元为 H_{i+1, i}。最后对完整的 ℳ 做残差校验。
"""

from fractions import Fraction
from numbers import Number
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from src.config import settings
from src.errors import InconsistentSystem, NonRealCouplings, ShapeMismatch, ZeroSubdiagonal
from src.linalg.dense import eig_symmetric, exact_matrix, frobenius, is_exact, require_square, to_numeric
from src.metric.models import MetricCandidate


def _conj(x):
    return x.conjugate() if isinstance(x, Number) else np.conj(x)


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _residual_matrix(h: np.ndarray, theta: np.ndarray) -> np.ndarray:
    return np.conj(h).T @ theta - theta @ h


def metric_recurrent(
    h,
    first_row: Sequence,
    exact: Optional[bool] = None,
    experimental: bool = False,
) -> MetricCandidate:
    """由首行递推出满足 H†Θ = ΘH 的 Hermitian Θ

    exact=None 时, H 与首行都是有理数则自动走 Fraction 精确路径。
    experimental=True 允许复矩阵 (Θ 取 Hermitian)，只以残差校验为准。
    """
    arr = require_square(h)
    n = arr.shape[0]
    if len(first_row) != n:
        raise ShapeMismatch(f"first_row has {len(first_row)} entries, matrix is {n}×{n}")

    if exact is None:
        exact = is_exact(arr) and all(_is_rational(x) for x in first_row)

    if exact:
        a = exact_matrix(arr)
        row = [Fraction(x) for x in first_row]
        zero = Fraction(0)
    else:
        a = to_numeric(arr)
        is_complex = (np.iscomplexobj(a) and np.any(a.imag)) or any(complex(x).imag != 0 for x in first_row)
        if is_complex and not experimental:
            raise NonRealCouplings("recurrent metric needs a real matrix (pass experimental=True to try)")
        dtype = complex if is_complex else float
        a = a.astype(dtype)
        row = [dtype(x) for x in first_row]
        zero = dtype(0)

    theta = np.empty((n, n), dtype=object if exact else a.dtype)
    theta[:] = zero
    known = np.zeros((n, n), dtype=bool)
    for j in range(n):
        theta[0, j] = row[j]
        theta[j, 0] = _conj(row[j])
        known[0, j] = known[j, 0] = True
    if not exact and np.iscomplexobj(theta):
        theta[0, 0] = theta[0, 0].real

    nonzero = np.vectorize(lambda x: x != 0, otypes=[bool])(a)

    for i in range(n - 1):
        pivot = _conj(a[i + 1, i])
        if pivot == 0:
            raise ZeroSubdiagonal(f"recurrence pivot H[{i + 1}, {i}] is zero")
        for j in range(i + 1, n):
            acc = zero
            for k in range(n):
                if not nonzero[k, j]:
                    continue
                if not known[i, k]:
                    raise InconsistentSystem(f"equation ({i}, {j}) needs unknown Θ[{i}, {k}]")
                acc = acc + theta[i, k] * a[k, j]
            for k in range(n):
                if k == i + 1 or not nonzero[k, i]:
                    continue
                if not known[k, j]:
                    raise InconsistentSystem(f"equation ({i}, {j}) needs unknown Θ[{k}, {j}]")
                acc = acc - _conj(a[k, i]) * theta[k, j]
            value = acc / pivot
            theta[i + 1, j] = value
            theta[j, i + 1] = _conj(value)
            known[i + 1, j] = known[j, i + 1] = True

    numeric_h = to_numeric(a)
    numeric_theta = to_numeric(theta)
    if exact:
        defect = _residual_matrix(a, theta)
        residual = float(max(abs(x) for x in defect.flat))
    else:
        residual = float(np.max(np.abs(_residual_matrix(numeric_h, numeric_theta))))
    bound = settings.tol_metric_residual * max(1.0, frobenius(numeric_h) * frobenius(numeric_theta))
    if residual > bound:
        raise InconsistentSystem(f"quasi-Hermiticity residual {residual:.3e} exceeds {bound:.3e}")

    eigenvalues = eig_symmetric(numeric_theta).eigenvalues
    positive = bool(eigenvalues.min() > settings.pd_tol)
    logger.debug(f"recurrent metric built (N={n}, exact={exact}, min θ={eigenvalues.min():.6g})")
    return MetricCandidate(
        theta=numeric_theta,
        residual=residual,
        eigenvalues=eigenvalues,
        positive_definite=positive,
        provenance={
            "method": "recurrent",
            "first_row": [str(x) if exact else _row_entry(x) for x in row],
            "exact": exact,
            "experimental": experimental,
        },
        theta_exact=theta if exact else None,
    )


def _row_entry(x):
    z = complex(x)
    return [z.real, z.imag] if z.imag else z.real
