"""异常定义

所有数值与模型错误都继承 PTSpectraError，CLI 用 `name` 回显结构化错误名。
"""


class PTSpectraError(Exception):
    """PTSpectra 错误基类"""

    @property
    def name(self) -> str:
        return type(self).__name__


class ConfigError(PTSpectraError, ValueError):
    """运行配置校验失败，可携带多条字段错误"""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


# ===== linalg =====


class NonSquare(PTSpectraError, ValueError):
    """矩阵不是方阵"""


class IterationLimitExceeded(PTSpectraError):
    """QR 迭代未收敛"""


class NotHermitian(PTSpectraError, ValueError):
    """矩阵不满足 Hermitian 容差"""


class Singular(PTSpectraError):
    """消元主元过小"""


class NotPositiveDefinite(PTSpectraError):
    """最小特征值不大于阈值"""


# ===== model =====


class DimensionMismatch(PTSpectraError, ValueError):
    """耦合向量长度与 M 不一致，或维度不是 2M+1"""


class NonRealCouplings(PTSpectraError, ValueError):
    """要求实耦合的路径收到复数"""


class UnknownPreset(PTSpectraError, ValueError):
    """未知的预设模型名"""


# ===== spectrum =====


class DegenerateD(PTSpectraError):
    """z0 态不唯一: d̂ 简并或 α_j = β_j = 0"""


class AtPole(PTSpectraError):
    """在 R(ε) 的极点处求值"""


class RootAtPole(PTSpectraError):
    """久期根与某个 d̂_i 重合"""


# ===== metric =====


class ZeroSubdiagonal(PTSpectraError):
    """递推主元 h[i+1, i] 为零"""


class InconsistentSystem(PTSpectraError):
    """递推结果不满足完整的准厄米关系"""


class ComplexSpectrum(PTSpectraError):
    """谱含复共轭对，度规不存在"""


class DegenerateSpectrum(PTSpectraError):
    """谱简并或处于 EP，不可对角化"""


class ShapeMismatch(PTSpectraError, ValueError):
    """矩阵形状不一致"""


# ===== scan =====


class NoSignChange(PTSpectraError):
    """区间两端谓词相同，无法二分"""


class NotDegenerate(PTSpectraError):
    """给定能量附近没有二重本征值"""


class SeedNotPositive(PTSpectraError):
    """种子 ξ₀ 处度规候选不正定"""
