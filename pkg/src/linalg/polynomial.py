"""多项式与特征多项式

Polynomial 系数按升幂存储 (coefficients[k] 对应 λ^k)。
系数为 Fraction 时所有运算 (求值、长除法、Sturm 链) 都是精确的。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from src.linalg.dense import exact_matrix, is_exact, require_square, to_numeric


def _is_zero(c) -> bool:
    return c == 0


def _normalize(coefficients: Sequence) -> tuple:
    coeffs = [Fraction(c) if isinstance(c, (int, np.integer)) and not isinstance(c, bool) else c
              for c in coefficients]
    while len(coeffs) > 1 and _is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def _sign(c) -> int:
    if c > 0:
        return 1
    if c < 0:
        return -1
    return 0


def _variations(signs: list[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


@dataclass(frozen=True)
class Polynomial:
    """单变量多项式，升幂系数"""

    coefficients: tuple

    def __post_init__(self):
        coeffs = _normalize(self.coefficients)
        if not coeffs or (len(coeffs) == 1 and _is_zero(coeffs[0])):
            raise ValueError("zero polynomial has no leading coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coefficients)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def scaled(self, factor) -> "Polynomial":
        return Polynomial(tuple(c * factor for c in self.coefficients))

    def derivative(self) -> Optional["Polynomial"]:
        """导数; 常数多项式返回 None"""
        if self.degree == 0:
            return None
        return Polynomial(tuple(k * c for k, c in enumerate(self.coefficients) if k > 0))

    def divmod(self, divisor: "Polynomial") -> tuple[Optional["Polynomial"], Optional["Polynomial"]]:
        """长除法, 返回 (商, 余式); 零多项式用 None 表示"""
        num = list(self.coefficients)
        den = divisor.coefficients
        dq = divisor.degree
        if self.degree < dq:
            return None, self
        quotient = [0] * (len(num) - dq)
        for k in range(len(num) - 1 - dq, -1, -1):
            coef = num[k + dq] / divisor.leading
            quotient[k] = coef
            for i in range(dq + 1):
                num[k + i] = num[k + i] - coef * den[i]
        remainder = num[:dq]
        while remainder and _is_zero(remainder[-1]):
            remainder.pop()
        return Polynomial(tuple(quotient)), (Polynomial(tuple(remainder)) if remainder else None)

    def deflate(self, root) -> "Polynomial":
        """综合除法除去因子 (λ − root)

        精确系数下 root 不是根时抛出 ValueError。
        """
        if self.degree == 0:
            raise ValueError("cannot deflate a constant polynomial")
        coeffs = self.coefficients
        n = self.degree
        quotient = [0] * n
        carry = coeffs[n]
        for k in range(n - 1, -1, -1):
            quotient[k] = carry
            carry = coeffs[k] + carry * root
        if self.is_exact and isinstance(root, (int, Fraction)) and carry != 0:
            raise ValueError(f"{root} is not a root (remainder {carry})")
        return Polynomial(tuple(quotient))

    def sturm_chain(self) -> list["Polynomial"]:
        """Sturm 序列 p, p', −rem(p, p'), ... 直到最大公因式"""
        if not self.is_exact:
            raise ValueError("Sturm chain requires exact rational coefficients")
        chain = [self]
        d = self.derivative()
        if d is None:
            return chain
        chain.append(d)
        while True:
            _, rem = chain[-2].divmod(chain[-1])
            if rem is None:
                break
            chain.append(-rem)
        return chain

    def real_root_count(self) -> int:
        """不同实根个数 (精确 Sturm 计数)"""
        chain = self.sturm_chain()
        if len(chain) == 1:
            return 0
        at_pos_inf = [_sign(p.leading) for p in chain]
        at_neg_inf = [_sign(p.leading) * (-1) ** p.degree for p in chain]
        return _variations(at_neg_inf) - _variations(at_pos_inf)

    def distinct_root_count(self) -> int:
        """不同复根个数 = deg p − deg gcd(p, p')"""
        chain = self.sturm_chain()
        return self.degree - chain[-1].degree if len(chain) > 1 else 0

    def has_only_real_roots(self) -> bool:
        return self.real_root_count() == self.distinct_root_count()

    def roots(self) -> np.ndarray:
        """数值根 (伴随矩阵特征值)"""
        coeffs = [complex(c) for c in reversed(self.coefficients)]
        return np.roots(coeffs)

    def to_list(self) -> list:
        """JSON 友好的系数列表: 精确系数输出 "p/q" 字符串，复数输出 [re, im]"""
        out = []
        for c in self.coefficients:
            if isinstance(c, Fraction):
                out.append(str(c))
            elif isinstance(c, complex) or np.iscomplexobj(c):
                out.append([float(np.real(c)), float(np.imag(c))])
            else:
                out.append(float(c))
        return out


def char_poly(m, exact: Optional[bool] = None) -> Polynomial:
    """det(λI − m) 的系数 (Faddeev–LeVerrier 递推)

    exact=None 时对 Fraction 矩阵自动走精确路径; exact=True 会把浮点元素按二进制值精确转换。
    """
    arr = require_square(m)
    n = arr.shape[0]
    if exact is None:
        exact = is_exact(arr)

    if exact:
        a = exact_matrix(arr)
        identity = exact_matrix(np.eye(n, dtype=int))
        coeffs: list = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        mk = np.zeros((n, n), dtype=object)
        mk[:] = Fraction(0)
        c = Fraction(1)
        for k in range(1, n + 1):
            mk = a @ mk + identity * c
            c = -Fraction(np.trace(a @ mk)) / k
            coeffs[n - k] = c
        return Polynomial(tuple(coeffs))

    a = to_numeric(arr)
    dtype = complex if np.iscomplexobj(a) else float
    a = a.astype(dtype)
    identity = np.eye(n, dtype=dtype)
    coeffs = [dtype(0)] * (n + 1)
    coeffs[n] = dtype(1)
    mk = np.zeros((n, n), dtype=dtype)
    c = dtype(1)
    for k in range(1, n + 1):
        mk = a @ mk + identity * c
        c = -np.trace(a @ mk) / k
        coeffs[n - k] = c
    return Polynomial(tuple(coeffs))
