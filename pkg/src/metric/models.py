"""度规数据结构"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.linalg.dense import to_numeric


@dataclass(frozen=True)
class MetricCandidate:
    """度规候选 Θ 及其校验结果

    theta_exact 仅在有理精确路径下给出 (Fraction 矩阵)。
    """

    theta: np.ndarray
    residual: float
    eigenvalues: np.ndarray
    positive_definite: bool
    provenance: dict = field(default_factory=dict)
    theta_exact: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def min_eigenvalue(self) -> float:
        return float(np.min(self.eigenvalues))

    def to_dict(self) -> dict:
        theta = to_numeric(self.theta)
        if np.iscomplexobj(theta):
            rows = [[[float(z.real), float(z.imag)] for z in row] for row in theta]
        else:
            rows = [[float(x) for x in row] for row in theta]
        data = {
            "theta": rows,
            "residual": float(self.residual),
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "positive_definite": bool(self.positive_definite),
            "provenance": self.provenance,
        }
        if self.theta_exact is not None:
            data["theta_exact"] = [[str(x) for x in row] for row in self.theta_exact]
        return data


@dataclass(frozen=True)
class SpectralWeights:
    """度规在谱族 Σ κ_j² |Ψ_j⟩⟨Ψ_j| 上的投影"""

    kappa_sq: np.ndarray
    reconstruction_error: float

    @property
    def all_positive(self) -> bool:
        return bool(np.all(self.kappa_sq > 0))


@dataclass(frozen=True)
class DysonMap:
    """Θ = Ω†Ω 的 Hermitian 分解 Ω = Θ^{1/2}"""

    omega: np.ndarray
    omega_inverse: np.ndarray
    residual: float

    def conjugate(self, h) -> np.ndarray:
        """𝔥 = Ω H Ω⁻¹"""
        return self.omega @ to_numeric(h) @ self.omega_inverse
