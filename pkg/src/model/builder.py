"""格点哈密顿量构造

矩阵下标从 0 开始，中心格点 c = M:
- 两个 M×M 角块为次对角线全 −1 的三对角块 (对角元 0)
- 中心列: H[k−1, c] = w_k，H[c+k, c] = v_k
- 中心行: (v_M*, …, v_1*, u, w_M*, …, w_1*)
"""

from fractions import Fraction
from numbers import Number
from typing import Sequence

import numpy as np
from loguru import logger

from src.config import settings
from src.errors import DimensionMismatch, NonRealCouplings, UnknownPreset
from src.linalg.dense import exact_matrix, to_numeric
from src.model.models import PRESET_NAMES, HamiltonianSpec


def parity_matrix(n: int, exact: bool = False) -> np.ndarray:
    """反对角 0/1 矩阵 𝒫"""
    if n < 1:
        raise ValueError(f"parity matrix needs n ≥ 1, got {n}")
    p = np.fliplr(np.eye(n, dtype=int))
    return exact_matrix(p) if exact else p.astype(float)


def _exact_value(x) -> Fraction:
    if isinstance(x, (complex, np.complexfloating)):
        if x.imag != 0:
            raise NonRealCouplings(f"exact construction needs real couplings, got {x}")
        x = x.real
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, np.generic):
        x = x.item()
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _conj(x):
    return x.conjugate() if isinstance(x, Number) else np.conj(x)


def assemble(M: int, u, w: Sequence, v: Sequence, exact: bool = False) -> np.ndarray:
    """按 (M, u, w, v) 组装 N×N 矩阵"""
    if M < 1:
        raise DimensionMismatch(f"M must be ≥ 1, got {M}")
    if len(w) != M or len(v) != M:
        raise DimensionMismatch(f"expected |w| = |v| = M = {M}, got |w| = {len(w)}, |v| = {len(v)}")

    n = 2 * M + 1
    c = M
    if exact:
        w = [_exact_value(x) for x in w]
        v = [_exact_value(x) for x in v]
        u = _exact_value(u)
        h = exact_matrix(np.zeros((n, n), dtype=int))
        minus_one = Fraction(-1)
    else:
        w = [complex(x) for x in w]
        v = [complex(x) for x in v]
        u = float(u)
        is_complex = any(x.imag != 0 for x in (*w, *v))
        if not is_complex:
            w = [x.real for x in w]
            v = [x.real for x in v]
        h = np.zeros((n, n), dtype=complex if is_complex else float)
        minus_one = -1.0

    for i in range(M - 1):
        h[i, i + 1] = h[i + 1, i] = minus_one
        h[c + 1 + i, c + 2 + i] = h[c + 2 + i, c + 1 + i] = minus_one

    for k in range(1, M + 1):
        h[k - 1, c] = w[k - 1]
        h[c + k, c] = v[k - 1]
        h[c, M - k] = _conj(v[k - 1])
        h[c, c + k] = _conj(w[M - k])
    h[c, c] = u
    return h


def build_general(spec: HamiltonianSpec, exact: bool = False) -> np.ndarray:
    """一般 PT 对称族 H̃"""
    if spec.M is None or spec.w is None or spec.v is None:
        raise DimensionMismatch("general model needs M, w and v")
    return assemble(spec.M, spec.u, spec.w, spec.v, exact=exact)


def ma_couplings(M: int) -> list:
    """最大非对称族的下方耦合: v₁ = −1, 其余为 0"""
    return [-1] + [0] * (M - 1)


def build_ma(spec: HamiltonianSpec, exact: bool = False) -> np.ndarray:
    """最大非对称实族 Ĥ^(MA)"""
    if spec.M is None or spec.w is None:
        raise DimensionMismatch("ma model needs M and w")
    if any(complex(x).imag != 0 for x in spec.w):
        raise NonRealCouplings("ma model needs real w")
    w = [complex(x).real for x in spec.w]
    return assemble(spec.M, spec.u, w, ma_couplings(spec.M), exact=exact)


def build_preset(name: str, q=0, r=0, s=0, exact: bool = False) -> np.ndarray:
    """预设模型; 参数可以是 Fraction，配合 exact=True 得到有理矩阵"""
    if exact:
        q, r, s = (_exact_value(x) for x in (q, r, s))
    if name == "hami5":
        return assemble(2, 0, [r, -1 + s], [-1 - s, -r], exact=exact)
    if name == "hami7":
        return assemble(3, 0, [q, r, -1 + s], [-1 - s, -r, -q], exact=exact)
    if name == "hami27":
        return assemble(3, 0, [q, r, -1 + s], ma_couplings(3), exact=exact)
    if name == "dim5":
        return assemble(2, 0, [r, -1 + s], ma_couplings(2), exact=exact)
    raise UnknownPreset(f"unknown preset {name!r}, expected one of {PRESET_NAMES}")


def build(spec: HamiltonianSpec, exact: bool = False) -> np.ndarray:
    """按 spec.preset 分派到对应构造器"""
    if spec.is_preset:
        return build_preset(spec.preset, spec.q, spec.r, spec.s, exact=exact)
    if spec.preset == "ma":
        return build_ma(spec, exact=exact)
    return build_general(spec, exact=exact)


def free_lattice(M: int) -> np.ndarray:
    """无长程耦合的自由链: 完整三对角 −1，Hermitian"""
    return assemble(M, 0, [0] * (M - 1) + [-1], ma_couplings(M))


def check_pt_symmetry(h, tol: float = None) -> bool:
    """𝒫H = H†𝒫 (max 范数容差)"""
    tol = settings.tol_pt if tol is None else tol
    a = to_numeric(h)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    p = parity_matrix(a.shape[0])
    defect = float(np.max(np.abs(p @ a - a.conj().T @ p)))
    if defect > tol:
        logger.debug(f"PT defect {defect:.3e} exceeds {tol:.1e}")
    return defect <= tol
