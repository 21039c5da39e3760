"""Dense univariate polynomials over the integers.

Coefficients are stored in ascending degree order and are plain Python ints
(or gmpy2 ``mpz`` values when evaluated at big arguments); nothing here ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadExponent, NotMonic, ZeroConstantTerm, ZeroPolynomialError


@dataclass(frozen=True, init=False)
class IntPoly:
    """``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are stripped."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_descending(cls, *coeffs: int) -> IntPoly:
        """``IntPoly.from_descending(1, -1, 0, 1)`` is ``x^3 - x^2 + 1``."""
        return cls(reversed(coeffs))

    # basic structure

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    # evaluation

    def eval(self, x):
        """Horner evaluation; exact for any integer type (int or mpz)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = eval

    def div_x(self) -> IntPoly:
        """``(p(x) - p(0)) / x``, the polynomial part of ``p(x)/x``."""
        return IntPoly(self.coeffs[1:])

    # the companion transform and the elementary bounds

    def companion(self) -> IntPoly:
        """Coefficient reversal ``x**n * p(1/x)``; needs ``p(0) != 0`` to keep the degree."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroConstantTerm(f"companion of {self} would drop degree")
        return IntPoly(reversed(self.coeffs))

    def _require_monic(self) -> None:
        if not self.is_monic():
            raise NotMonic(f"{self} is not monic")
        if self.degree < 1:
            raise NotMonic(f"{self} has degree 0")

    def tail_abs_sum(self) -> int:
        """Sum of ``|a_i|`` over all coefficients below the leading one."""
        self._require_monic()
        return sum(abs(c) for c in self.coeffs[:-1])

    def root_bound(self) -> int:
        """Every complex root of the monic ``p`` has modulus at most this value."""
        return max(1, self.tail_abs_sum())

    def dominates(self, m_exp: int, x: int) -> bool:
        """Whether ``|p(x)| > |x|**m_exp``.

        For monic ``p`` of degree ``n`` and ``0 <= m_exp < n`` this is
        guaranteed whenever ``|x| > 1 + tail_abs_sum()``, since then
        ``|p(x)| >= |x|**(n-1) * (|x| - tail) > |x|**(n-1)``.
        """
        self._require_monic()
        if not 0 <= m_exp < self.degree:
            raise BadExponent(f"exponent {m_exp} outside [0, {self.degree})")
        return abs(self.eval(x)) > abs(x) ** m_exp

    def preserves_unit_values(self) -> bool:
        """True iff ``p(1)`` and ``p(-1)`` both lie in ``{1, -1}``."""
        return abs(self.eval(1)) == 1 and abs(self.eval(-1)) == 1

    # formatting / serialization

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> IntPoly:
        return cls(int(str(c)) for c in data)

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()
