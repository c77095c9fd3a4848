"""参数扫描数据结构"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

BOUNDARY_REALITY = "reality_boundary"
BOUNDARY_INTERIOR = "interior_crossing"


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class SweepResult:
    """网格上的谱; energies 形状为 (n_points, N)，每行按 (实部, 虚部) 排序"""

    param_name: str
    grid: np.ndarray
    energies: np.ndarray
    reality: list[str]

    @property
    def n_points(self) -> int:
        return len(self.grid)

    def rows(self) -> list[list]:
        """CSV 行: 参数值, 各本征值的 Re/Im, 实性标记"""
        out = []
        for x, values, flag in zip(self.grid, self.energies, self.reality):
            row: list = [float(x)]
            for z in values:
                row.extend([float(z.real), float(z.imag)])
            row.append(flag)
            out.append(row)
        return out

    def header(self) -> list[str]:
        cols = [self.param_name]
        for j in range(self.energies.shape[1]):
            cols.extend([f"re_{j + 1}", f"im_{j + 1}"])
        cols.append("reality")
        return cols


@dataclass(frozen=True)
class EPCertificate:
    """例外点的秩证书"""

    degenerate_eigenvalue: complex
    geometric_multiplicity: int
    jordan_block_size: int
    null_vector: np.ndarray
    param_value: Optional[float] = None

    @property
    def certified(self) -> bool:
        return self.jordan_block_size >= 2

    def to_dict(self) -> dict:
        return {
            "param_value": self.param_value,
            "degenerate_eigenvalue": _pair(self.degenerate_eigenvalue),
            "geometric_multiplicity": self.geometric_multiplicity,
            "jordan_block_size": self.jordan_block_size,
            "null_vector": [_pair(z) for z in self.null_vector],
        }


@dataclass(frozen=True)
class JordanChain:
    """例外点处的本征向量与关联 (广义) 向量: (H − ε)g = n"""

    eigenvalue: complex
    null_vector: np.ndarray
    chain_vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class Boundary:
    value: float
    kind: str

    def to_dict(self) -> dict:
        return {"value": self.value, "kind": self.kind}


@dataclass(frozen=True)
class DomainReport:
    """物理域 (全实非简并谱的开区间)、EP 边界与间隙"""

    param_name: str
    window: tuple[float, float]
    intervals: list[tuple[float, float]]
    boundaries: list[Boundary]
    gaps: list[tuple[float, float]]
    certificates: list[EPCertificate] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "param": self.param_name,
            "window": list(self.window),
            "intervals": [list(iv) for iv in self.intervals],
            "boundaries": [b.to_dict() for b in self.boundaries],
            "gaps": [list(g) for g in self.gaps],
            "certificates": [c.to_dict() for c in self.certificates],
        }


@dataclass(frozen=True)
class PositivityInterval:
    """首行参数 ξ 上度规正定的最大开区间与本征值曲线"""

    lo: float
    hi: float
    seed: float
    bounded_below: bool
    bounded_above: bool
    grid: np.ndarray
    eigencurves: np.ndarray

    def to_dict(self) -> dict:
        return {
            "interval": [self.lo, self.hi],
            "seed": self.seed,
            "bounded_below": self.bounded_below,
            "bounded_above": self.bounded_above,
        }

    def rows(self) -> list[list[float]]:
        return [[float(x), *map(float, curve)] for x, curve in zip(self.grid, self.eigencurves)]

    def header(self) -> list[str]:
        return ["xi"] + [f"theta_{j + 1}" for j in range(self.eigencurves.shape[1])]
