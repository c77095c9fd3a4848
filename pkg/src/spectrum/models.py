"""谱求解数据结构"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from src.model.basis import transform_basis

FAMILY_Z0 = "z0"
FAMILY_Z1 = "z1"

REALITY_ALL_REAL = "all_real"
REALITY_COMPLEX = "complex_pairs"
REALITY_DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ReducedModel:
    """分块约化模型 (M, u, α, β, d̂)"""

    M: int
    u: float
    alpha: np.ndarray
    beta: np.ndarray
    d: np.ndarray
    unitary: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_hamiltonian(cls, h, M: int) -> "ReducedModel":
        part = transform_basis(h, M)
        return cls(M, part.u, part.alpha, part.beta, part.d, part.unitary)

    @property
    def residues(self) -> np.ndarray:
        """极点留数 2Re(α_i β̄_i)"""
        return 2.0 * np.real(self.alpha * np.conj(self.beta))

    @property
    def asymptotic_weight(self) -> float:
        """G = Σ 2Re(α_i β̄_i), ε·R(ε) → G"""
        return float(np.sum(self.residues))

    def swapped(self) -> "ReducedModel":
        """α ↔ β 交换: 描述 (H^(PT))†"""
        return replace(self, alpha=self.beta, beta=self.alpha)

    def matrix(self) -> np.ndarray:
        """重建分块矩阵 H^(PT)"""
        M = self.M
        h = np.zeros((2 * M + 1, 2 * M + 1), dtype=complex)
        h[:M, :M] = np.diag(self.d)
        h[M + 1 :, M + 1 :] = np.diag(self.d)
        h[:M, M] = self.alpha
        h[M + 1 :, M] = self.beta
        h[M, :M] = np.conj(self.beta)
        h[M, M + 1 :] = np.conj(self.alpha)
        h[M, M] = self.u
        return h


@dataclass(frozen=True)
class SpectrumResult:
    """完整本征分解 + 族标签 + 实性分类

    right_vectors / left_vectors 以列存放，与 energies 按下标对齐。
    basis 为 "original" (H 的基) 或 "partitioned" (H^(PT) 的基)。
    """

    energies: np.ndarray
    family: list[str]
    right_vectors: np.ndarray
    left_vectors: Optional[np.ndarray] = None
    reality: str = REALITY_ALL_REAL
    path: str = "reduced"
    basis: str = "original"

    @property
    def size(self) -> int:
        return len(self.energies)

    def to_dict(self, include_vectors: bool = False) -> dict:
        data = {
            "energies": [[float(z.real), float(z.imag)] for z in self.energies],
            "family": list(self.family),
            "reality": self.reality,
            "path": self.path,
        }
        if include_vectors:
            data["right_vectors"] = _columns_to_pairs(self.right_vectors)
            if self.left_vectors is not None:
                data["left_vectors"] = _columns_to_pairs(self.left_vectors)
        return data


def _columns_to_pairs(vectors: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in vectors[:, j]] for j in range(vectors.shape[1])]
