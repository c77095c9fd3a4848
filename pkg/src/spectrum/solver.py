"""分块约化谱求解器

约化路径: z=0 族 (ε = d̂_j, 中心分量为 0) + z=1 族 (久期方程的 M+1 个实根)。
约化路径不完整 (复化、根落在极点、近简并) 时退回 eig_general 稠密求解。
"""

from typing import Optional

import numpy as np
from loguru import logger

from src.config import settings
from src.errors import DegenerateD, RootAtPole
from src.linalg.dense import (
    EigenDecomposition,
    eig_general,
    frobenius,
    spectral_order,
    to_numeric,
)
from src.linalg.polynomial import char_poly
from src.spectrum.models import (
    FAMILY_Z0,
    FAMILY_Z1,
    REALITY_ALL_REAL,
    REALITY_COMPLEX,
    REALITY_DEGENERATE,
    ReducedModel,
    SpectrumResult,
)
from src.spectrum.secular import secular_roots


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def z0_states(rm: ReducedModel, tol: Optional[float] = None) -> SpectrumResult:
    """z=0 族: ε_j = d̂_j，分量 (x_j, y_j) 满足中心行约束 β̄_j x_j + ᾱ_j y_j = 0"""
    tol = settings.tol_pole if tol is None else tol
    M = rm.M
    if M > 1 and np.min(np.diff(rm.d)) <= tol:
        raise DegenerateD("poles d̂ are degenerate")
    vectors = np.zeros((2 * M + 1, M), dtype=complex)
    for j in range(M):
        a, b = rm.alpha[j], rm.beta[j]
        if abs(a) <= tol and abs(b) <= tol:
            raise DegenerateD(f"α_{j + 1} = β_{j + 1} = 0, the z=0 state at d̂_{j + 1} is not unique")
        vectors[j, j] = np.conj(a)
        vectors[M + 1 + j, j] = -np.conj(b)
        vectors[:, j] = _unit(vectors[:, j])
    return SpectrumResult(
        energies=rm.d.astype(complex),
        family=[FAMILY_Z0] * M,
        right_vectors=vectors,
        basis="partitioned",
    )


def z1_states(rm: ReducedModel, roots) -> SpectrumResult:
    """z=1 族: (x⃗, 1, y⃗)，x⃗ = α⃗/(ε − d̂)，y⃗ = β⃗/(ε − d̂)"""
    roots = np.asarray(roots, dtype=float)
    M = rm.M
    vectors = np.zeros((2 * M + 1, len(roots)), dtype=complex)
    h_pt = rm.matrix()
    scale = max(1.0, float(np.linalg.norm(h_pt)))
    for k, eps in enumerate(roots):
        gaps = eps - rm.d
        if np.min(np.abs(gaps)) <= 1e-10:
            raise RootAtPole(f"root {eps} lies on a pole of R")
        psi = np.concatenate([rm.alpha / gaps, [1.0], rm.beta / gaps])
        psi = _unit(psi)
        residual = float(np.linalg.norm(h_pt @ psi - eps * psi))
        if residual > 1e-9 * scale:
            logger.warning(f"z=1 state at ε = {eps:.6g} has residual {residual:.3e}")
        vectors[:, k] = psi
    return SpectrumResult(
        energies=roots.astype(complex),
        family=[FAMILY_Z1] * len(roots),
        right_vectors=vectors,
        basis="partitioned",
    )


def spectrum_is_real(h, energies) -> bool:
    """实谱判定

    最大虚部 ≤ tol_im·scale 为实; > tol_im_ambiguous·scale 为复;
    中间地带对实矩阵用精确特征多项式的 Sturm 计数裁决。
    """
    a = to_numeric(h)
    scale = max(1.0, frobenius(a))
    im = float(np.max(np.abs(np.imag(energies)))) if len(energies) else 0.0
    if im <= settings.tol_im * scale:
        return True
    if im > settings.tol_im_ambiguous * scale:
        return False
    if np.iscomplexobj(a) and np.any(a.imag):
        return False
    verdict = char_poly(np.real(a), exact=True).has_only_real_roots()
    logger.debug(f"ambiguous imaginary part {im:.3e} resolved by Sturm count: real={verdict}")
    return verdict


def classify_reality(h, dec: EigenDecomposition) -> str:
    """all_real / complex_pairs / degenerate"""
    if not spectrum_is_real(h, dec.eigenvalues):
        return REALITY_COMPLEX
    scale = max(1.0, frobenius(h))
    values = np.sort(np.real(dec.eigenvalues))
    if len(values) > 1 and np.min(np.diff(values)) < settings.tol_degenerate_gap * scale:
        return REALITY_DEGENERATE
    if dec.left_vectors is not None and np.max(dec.condition_numbers()) > settings.max_eigen_condition:
        return REALITY_DEGENERATE
    return REALITY_ALL_REAL


def tag_families(energies: np.ndarray, d: np.ndarray, tol: Optional[float] = None) -> list[str]:
    """按与 d̂ 的距离标注族; 每个 d̂_j 至多认领一个能级"""
    tol = settings.tol_family if tol is None else tol
    family = [FAMILY_Z1] * len(energies)
    for pole in d:
        dist = np.abs(energies - pole)
        for idx in np.argsort(dist, kind="stable"):
            if dist[idx] > tol:
                break
            if family[idx] == FAMILY_Z1:
                family[idx] = FAMILY_Z0
                break
    return family


def _reduced_states(rm: ReducedModel) -> Optional[tuple[np.ndarray, list[str], np.ndarray]]:
    """约化路径; 不完整时返回 None"""
    try:
        z0 = z0_states(rm)
        roots = secular_roots(rm)
        if len(roots) != rm.M + 1:
            return None
        z1 = z1_states(rm, roots)
    except (DegenerateD, RootAtPole) as e:
        logger.debug(f"reduced path unavailable: {e.name}")
        return None

    energies = np.concatenate([z0.energies, z1.energies])
    family = z0.family + z1.family
    vectors = np.concatenate([z0.right_vectors, z1.right_vectors], axis=1)
    order = spectral_order(energies)
    values = np.real(energies[order])
    scale = max(1.0, float(np.linalg.norm(rm.matrix())))
    if np.min(np.diff(values)) < settings.tol_degenerate_gap * scale:
        logger.debug("reduced path hit a near-degenerate pair")
        return None
    return energies[order], [family[i] for i in order], vectors[:, order]


def full_spectrum(h, M: int) -> SpectrumResult:
    """完整谱: 实且非简并时走约化路径，否则退回稠密求解"""
    rm = ReducedModel.from_hamiltonian(h, M)
    right = _reduced_states(rm)
    left = _reduced_states(rm.swapped()) if right is not None else None
    if right is not None and left is not None:
        energies, family, vectors = right
        _, _, left_vectors = left
        unitary = rm.unitary
        return SpectrumResult(
            energies=energies,
            family=family,
            right_vectors=unitary.T @ vectors,
            left_vectors=unitary.T @ left_vectors,
            reality=REALITY_ALL_REAL,
            path="reduced",
        )

    logger.debug(f"falling back to the dense solver (M={M})")
    dec = eig_general(h, left=True)
    return SpectrumResult(
        energies=dec.eigenvalues,
        family=tag_families(dec.eigenvalues, rm.d),
        right_vectors=dec.right_vectors,
        left_vectors=dec.left_vectors,
        reality=classify_reality(h, dec),
        path="dense",
    )


def left_eigensystem(h, M: int) -> SpectrumResult:
    """H† 的本征系统: 能级为 H 能级的共轭，与 full_spectrum 按下标对齐"""
    res = full_spectrum(h, M)
    return SpectrumResult(
        energies=np.conj(res.energies),
        family=list(res.family),
        right_vectors=res.left_vectors,
        left_vectors=res.right_vectors,
        reality=res.reality,
        path=res.path,
    )
