"""JSON / CSV 输出

浮点数统一用固定有效位数 (settings.float_digits) 格式化，同样输入得到逐字节相同的输出。
复数在 JSON 中写作 [re, im]，在 CSV 中拆成 Re/Im 两列。
"""

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np

from src.config import settings


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "null"
    if x == 0.0:
        return "0.0"
    text = format(x, f".{settings.float_digits}g")
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def make_json_safe(obj: Any) -> Any:
    """递归转换为 JSON 原生类型"""
    if hasattr(obj, "to_dict"):
        return make_json_safe(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return make_json_safe(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, float):
        return format_float(obj)
    return json.dumps(obj, ensure_ascii=False)


def to_json(obj: Any, indent: int = 2) -> str:
    return _emit(make_json_safe(obj), indent, 0) + "\n"


def _csv_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def to_csv(header: list[str], rows: Iterable[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buffer.getvalue()


def write_output(text: str, out: Optional[str] = None) -> None:
    """写到文件 (UTF-8) 或标准输出"""
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        print(text, end="")
