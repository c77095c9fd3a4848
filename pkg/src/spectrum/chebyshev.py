"""三对角 Toeplitz 角块的闭式对角化"""

import numpy as np


def chebyshev_eig(M: int) -> tuple[np.ndarray, np.ndarray]:
    """角块 D (次对角 −1) 的本征值 d 与正交矩阵 U_D

    d_k = −2cos(kπ/(M+1)) 升序, (U_D)_{k,j} = √(2/(M+1))·sin(kjπ/(M+1)),
    满足 U_D D U_Dᵀ = diag(d)。
    """
    if M < 1:
        raise ValueError(f"M must be ≥ 1, got {M}")
    k = np.arange(1, M + 1)
    d = -2.0 * np.cos(k * np.pi / (M + 1))
    u_d = np.sqrt(2.0 / (M + 1)) * np.sin(np.outer(k, k) * np.pi / (M + 1))
    return d, u_d
