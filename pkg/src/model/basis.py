"""三分块基变换

𝒰 = diag(U_D·𝒫^(M), 1, U_D) 把两个角块同时对角化，
H^(PT) = 𝒰 H 𝒰† 的中心列为 (α; u; β)，中心行为 (β†, u, α†)。
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from src.errors import DimensionMismatch
from src.linalg.dense import require_square, to_numeric
from src.model.builder import parity_matrix
from src.spectrum.chebyshev import chebyshev_eig


@dataclass(frozen=True)
class PartitionedHamiltonian:
    """基变换结果"""

    matrix: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    d: np.ndarray
    u: float
    unitary: np.ndarray

    @property
    def M(self) -> int:
        return len(self.d)


def partition_unitary(M: int) -> np.ndarray:
    """𝒰 (实正交)"""
    d, u_d = chebyshev_eig(M)
    return scipy.linalg.block_diag(u_d @ parity_matrix(M), np.ones((1, 1)), u_d)


def transform_basis(h, M: int) -> PartitionedHamiltonian:
    a = to_numeric(require_square(h))
    n = a.shape[0]
    if n != 2 * M + 1:
        raise DimensionMismatch(f"expected N = 2M+1 = {2 * M + 1}, got {n}")
    d, _ = chebyshev_eig(M)
    unitary = partition_unitary(M)
    h_pt = unitary @ a @ unitary.T
    alpha = np.asarray(h_pt[:M, M], dtype=complex)
    beta = np.asarray(h_pt[M + 1 :, M], dtype=complex)
    u = float(np.real(h_pt[M, M]))
    return PartitionedHamiltonian(h_pt, alpha, beta, d, u, unitary)
