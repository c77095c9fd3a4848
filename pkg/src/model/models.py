"""模型参数 Pydantic 定义

HamiltonianSpec 描述一个格点哈密顿量: 显式 (M, u, w, v) 或预设名 + (q, r, s)。
JSON 形式中复数写作 [re, im]，未知字段直接拒绝。
"""

from typing import Annotated, Literal, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

PRESET_NAMES = ("hami5", "hami7", "hami27", "dim5")
FAMILY_NAMES = ("general", "ma")
SCAN_PARAMS = ("q", "r", "s", "u")


def parse_complex(value):
    """接受数字、[re, im] 对或 "1+2j" 形式字符串"""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pair must have 2 entries, got {len(value)}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    return complex(value)


ComplexValue = Annotated[
    complex,
    BeforeValidator(parse_complex),
    PlainSerializer(lambda z: [z.real, z.imag], return_type=list),
]


class HamiltonianSpec(BaseModel):
    """格点哈密顿量参数"""

    model_config = ConfigDict(extra="forbid")

    preset: Literal["general", "ma", "hami5", "hami7", "hami27", "dim5"] = Field(
        default="general", description="模型族或预设名"
    )
    M: Optional[int] = Field(default=None, ge=1, description="半维数, N = 2M+1")
    u: float = Field(default=0.0, description="中心对角元")
    w: Optional[list[ComplexValue]] = Field(default=None, description="上方长程耦合 w₁…w_M")
    v: Optional[list[ComplexValue]] = Field(default=None, description="下方长程耦合 v₁…v_M")
    q: float = Field(default=0.0, description="预设参数 q")
    r: float = Field(default=0.0, description="预设参数 r")
    s: float = Field(default=0.0, description="预设参数 s")

    @property
    def is_preset(self) -> bool:
        return self.preset in PRESET_NAMES

    @property
    def half_dimension(self) -> Optional[int]:
        """预设的 M 由名字决定"""
        if self.preset in ("hami5", "dim5"):
            return 2
        if self.preset in ("hami7", "hami27"):
            return 3
        return self.M

    @property
    def dimension(self) -> Optional[int]:
        m = self.half_dimension
        return None if m is None else 2 * m + 1

    def with_param(self, name: str, value: float) -> "HamiltonianSpec":
        """替换一个扫描参数，其余不变"""
        if name not in SCAN_PARAMS:
            raise ValueError(f"unknown scan parameter {name!r}, expected one of {SCAN_PARAMS}")
        return self.model_copy(update={name: float(value)})

    def expand(self) -> "HamiltonianSpec":
        """把预设展开成 general / ma 族的显式参数"""
        q, r, s = self.q, self.r, self.s
        if self.preset == "hami5":
            return HamiltonianSpec(preset="general", M=2, u=0.0, w=[r, -1 + s], v=[-1 - s, -r])
        if self.preset == "hami7":
            return HamiltonianSpec(
                preset="general", M=3, u=0.0, w=[q, r, -1 + s], v=[-1 - s, -r, -q]
            )
        if self.preset == "hami27":
            return HamiltonianSpec(preset="ma", M=3, u=0.0, w=[q, r, -1 + s])
        if self.preset == "dim5":
            return HamiltonianSpec(preset="ma", M=2, u=0.0, w=[r, -1 + s])
        return self

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", exclude_none=True)
