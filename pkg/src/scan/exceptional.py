"""例外点 (EP): 闭式边界、Jordan 结构证书与关联向量"""

import math
from typing import Optional

import numpy as np
import scipy.linalg
from loguru import logger

from src.config import settings
from src.errors import NotDegenerate
from src.linalg.dense import eig_general, frobenius, to_numeric
from src.scan.models import EPCertificate, JordanChain


def s_ep_closed_form() -> float:
    """N=5 模型实性边界 EP 的闭式值, f = ∛(5 + √33)"""
    sqrt33 = math.sqrt(33.0)
    f = (5.0 + sqrt33) ** (1.0 / 3.0)
    numerator = 2.0 * math.sqrt(6 * f**2 - 15 * f - f * sqrt33 + 21 + 5 * sqrt33) - 2.0 * math.sqrt(2.0) * f
    denominator = 4.0 * math.sqrt(f * (f**2 - 2))
    return numerator / denominator


def _numerical_rank(a: np.ndarray, threshold: float) -> int:
    sv = scipy.linalg.svdvals(a)
    return int(np.sum(sv > threshold))


def _refine_cluster(a: np.ndarray, eps: complex) -> complex:
    """取离 eps 最近的两个本征值的均值"""
    values = eig_general(a).eigenvalues
    dist = np.abs(values - eps)
    nearest = np.argsort(dist, kind="stable")[:2]
    if len(nearest) < 2 or dist[nearest[1]] > settings.ep_cluster_tol:
        raise NotDegenerate(
            f"no doubly degenerate eigenvalue within {settings.ep_cluster_tol:.0e} of {eps}"
        )
    return complex(np.mean(values[nearest]))


def _phase_normalized(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return v / v[k]


def certify_interior_ep(h, eps: complex, param_value: Optional[float] = None) -> EPCertificate:
    """秩证书: rank(H − ε) = N−1 且 rank((H − ε)²) = N−2 ⇒ 2×2 Jordan 块"""
    a = to_numeric(h).astype(complex)
    n = a.shape[0]
    center = _refine_cluster(a, eps)
    shifted = a - center * np.eye(n)
    threshold = settings.rank_tol * frobenius(a)
    rank1 = _numerical_rank(shifted, threshold)
    rank2 = _numerical_rank(shifted @ shifted, threshold)
    geometric = n - rank1
    if geometric == 0:
        raise NotDegenerate(f"H − {center:.6g} has full numerical rank")
    jordan = 2 if (rank1 == n - 1 and rank2 == n - 2) else 1

    _, _, vh = scipy.linalg.svd(shifted)
    null_vector = _phase_normalized(vh[-1].conj())
    if np.allclose(null_vector.imag, 0, atol=1e-12):
        null_vector = null_vector.real
    logger.debug(
        f"EP certificate at ε={center:.10g}: geometric={geometric}, jordan={jordan}, "
        f"ranks=({rank1}, {rank2})"
    )
    return EPCertificate(center, geometric, jordan, null_vector, param_value)


def jordan_chain(h, eps: complex) -> JordanChain:
    """(H − ε)n = 0, (H − ε)g = n; g 取最小范数解"""
    cert = certify_interior_ep(h, eps)
    if not cert.certified:
        raise NotDegenerate("eigenvalue is semisimple, no associated vector exists")
    a = to_numeric(h).astype(complex)
    shifted = a - cert.degenerate_eigenvalue * np.eye(a.shape[0])
    null = np.asarray(cert.null_vector, dtype=complex)
    chain, *_ = scipy.linalg.lstsq(shifted, null)
    residual = float(np.linalg.norm(shifted @ chain - null))
    return JordanChain(cert.degenerate_eigenvalue, null, chain, residual)
