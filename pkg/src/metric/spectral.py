"""谱展开度规 Θ = Σ_j κ_j² |Ψ_j⟩⟨Ψ_j|

Ψ_j 是 H† 的单位本征向量 (来自 left_eigensystem)，要求谱全实且非简并。
"""

from typing import Optional, Sequence

import numpy as np
from loguru import logger

from src.config import settings
from src.errors import ComplexSpectrum, DegenerateSpectrum, InconsistentSystem, ShapeMismatch
from src.linalg.dense import eig_symmetric, frobenius, is_real, solve_linear, to_numeric
from src.metric.models import MetricCandidate, SpectralWeights
from src.metric.validation import quasi_hermiticity_residual
from src.spectrum.models import REALITY_COMPLEX, REALITY_DEGENERATE, SpectrumResult
from src.spectrum.solver import full_spectrum


def _physical_spectrum(h, M: int) -> SpectrumResult:
    res = full_spectrum(h, M)
    if res.reality == REALITY_COMPLEX:
        raise ComplexSpectrum("spectrum contains complex-conjugate pairs, no metric exists")
    if res.reality == REALITY_DEGENERATE:
        raise DegenerateSpectrum("spectrum is degenerate or at an exceptional point")
    return res


def metric_spectral(h, M: int, kappa_sq: Optional[Sequence[float]] = None) -> MetricCandidate:
    a = to_numeric(h)
    n = a.shape[0]
    kappa = np.ones(n) if kappa_sq is None else np.asarray(kappa_sq, dtype=float)
    if kappa.shape != (n,):
        raise ShapeMismatch(f"kappa_sq has {kappa.size} entries, matrix is {n}×{n}")
    if np.any(kappa <= 0):
        raise ValueError("kappa_sq entries must be positive")

    res = _physical_spectrum(a, M)
    psi = res.left_vectors
    theta = (psi * kappa[np.newaxis, :]) @ psi.conj().T
    theta = (theta + theta.conj().T) / 2
    if is_real(a):
        theta = theta.real

    residual = quasi_hermiticity_residual(a, theta)
    bound = settings.tol_metric_residual * max(1.0, frobenius(a) * frobenius(theta))
    if residual > bound:
        raise InconsistentSystem(f"spectral metric residual {residual:.3e} exceeds {bound:.3e}")

    eigenvalues = eig_symmetric(theta).eigenvalues
    logger.debug(f"spectral metric built via {res.path} path (min θ={eigenvalues.min():.6g})")
    return MetricCandidate(
        theta=theta,
        residual=residual,
        eigenvalues=eigenvalues,
        positive_definite=bool(eigenvalues.min() > settings.pd_tol),
        provenance={"method": "spectral", "kappa_sq": [float(x) for x in kappa], "path": res.path},
    )


def spectral_weights(h, M: int, theta) -> SpectralWeights:
    """把任意准厄米 Θ 投影到谱族上，求 κ_j²

    ψ_k†Θψ_k = Σ_j κ_j² |Ψ_j†ψ_k|²，解 N×N 线性方程组; 负的 κ_j² 表示 Θ 不定。
    """
    a = to_numeric(h)
    t = to_numeric(theta)
    res = _physical_spectrum(a, M)
    right, left = res.right_vectors, res.left_vectors
    overlaps = np.abs(left.conj().T @ right) ** 2
    rhs = np.real(np.einsum("ik,ij,jk->k", right.conj(), t, right))
    kappa = np.real(solve_linear(overlaps.T, rhs))
    rebuilt = (left * kappa[np.newaxis, :]) @ left.conj().T
    error = float(np.max(np.abs(rebuilt - t)))
    return SpectralWeights(kappa, error)
