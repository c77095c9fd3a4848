"""配置管理模块

PTSpectra 数值容差、并发与日志配置。
所有字段都可以通过 PTSPECTRA_ 前缀的环境变量或 .env 文件覆盖。
"""

import os
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """应用配置"""

    model_config = SettingsConfigDict(
        env_prefix="PTSPECTRA_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ===== 并发配置 =====
    threads: int = Field(
        default=0, ge=0, description="扫描网格点的最大并行数 (0=CPU 核数)"
    )

    # ===== 线性代数容差 =====
    tol_eig: float = Field(
        default=1e-10, description="特征对相对残差上限 ‖Hv−λv‖ / max(1,‖H‖_F)"
    )
    tol_hermitian: float = Field(
        default=1e-12, description="Hermitian 判定的逐元素非对称上限"
    )
    tol_psd: float = Field(default=1e-12, description="sqrt_psd 要求的最小特征值")
    pivot_tol: float = Field(
        default=1e-13, description="高斯消元主元相对阈值 (乘以 ‖A‖_F)"
    )
    tol_solve: float = Field(default=1e-10, description="线性方程组残差上限")

    # ===== 模型 / 谱 =====
    tol_pt: float = Field(default=1e-12, description="PT 对称判定 ‖PH − H†P‖_max 上限")
    tol_im: float = Field(
        default=1e-8, description="实谱判定的虚部阈值 (乘以 max(1,‖H‖_F))"
    )
    tol_im_ambiguous: float = Field(
        default=1e-4,
        description="虚部落在 (tol_im, 此值] 区间时用精确 Sturm 计数仲裁",
    )
    tol_family: float = Field(default=1e-8, description="z0 族能量与 d̂ 的匹配距离")
    tol_pole: float = Field(default=1e-10, description="根与极点的最小距离")
    tol_degenerate_gap: float = Field(
        default=1e-8, description="判定简并的最小本征值间距 (乘以 max(1,‖H‖_F))"
    )
    max_eigen_condition: float = Field(
        default=1e6, description="本征值条件数上限, 超过视为 EP 附近的简并"
    )
    secular_samples: int = Field(
        default=64, ge=4, description="久期方程每个极点区间的采样点数"
    )
    secular_root_tol: float = Field(default=1e-12, description="久期根细化精度")

    # ===== 度规 =====
    pd_tol: float = Field(default=1e-10, description="正定判定的最小特征值")
    tol_metric_residual: float = Field(
        default=1e-9, description="准厄米残差上限 (乘以 max(1,‖H‖_F‖Θ‖_F))"
    )

    # ===== 参数扫描 =====
    collision_tol: float = Field(default=1e-7, description="实本征值碰撞阈值")
    rank_tol: float = Field(
        default=1e-8, description="数值秩的奇异值阈值 (乘以 ‖H‖_F)"
    )
    ep_cluster_tol: float = Field(
        default=1e-6, description="certify_interior_ep 允许的 ε 偏差"
    )
    bisect_tol: float = Field(default=1e-10, description="边界二分的区间宽度")
    bisect_max_iter: int = Field(default=60, description="二分迭代上限")
    xi_bisect_tol: float = Field(default=1e-8, description="度规正定区间端点精度")
    default_lo: float = Field(default=-1.2, description="默认扫描窗口下界")
    default_hi: float = Field(default=1.2, description="默认扫描窗口上界")
    default_n_points: int = Field(default=481, description="默认扫描网格点数")

    # ===== 输出 =====
    float_digits: int = Field(default=17, description="JSON/CSV 浮点有效数字")

    # ===== 通用配置 =====
    log_level: str = Field(default="INFO", description="日志级别")
    log_file: str = Field(default="", description="日志文件路径 (空=不写文件)")

    @property
    def worker_count(self) -> int:
        """实际使用的并行线程数"""
        return self.threads or (os.cpu_count() or 1)


@lru_cache
def get_settings() -> Settings:
    """获取配置单例"""
    return Settings()


settings = get_settings()
