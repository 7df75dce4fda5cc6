"""Dense univariate power series, used for long single-variable expansions.

Coefficients are exact rationals in a Python list indexed by exponent,
truncated after ``order``. Powers with rational exponent (square roots,
``(...)**(-3/2)``) use the linear recurrence obtained from
``P * g' = alpha * P' * g``, which costs O(order * len(P)) instead of a
Newton iteration per term.
"""
from __future__ import annotations

from typing import Sequence

from .multi import MultiSeries
from .rational import ONE, ZERO, Rational, as_rational, rational_sqrt


class DenseSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        c = [as_rational(v) for v in list(coeffs)[: order + 1]]
        c.extend([ZERO] * (order + 1 - len(c)))
        self.coeffs = c
        self.order = order

    @classmethod
    def poly(cls, coeffs: Sequence, order: int) -> DenseSeries:
        return cls(coeffs, order)

    @classmethod
    def monomial(cls, degree: int, order: int, coef=1) -> DenseSeries:
        c = [ZERO] * (order + 1)
        if degree <= order:
            c[degree] = as_rational(coef)
        return cls(c, order)

    def __getitem__(self, n: int) -> Rational:
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n] if n >= 0 else ZERO

    def degree(self) -> int:
        for n in range(self.order, -1, -1):
            if self.coeffs[n]:
                return n
        return -1

    def _coerce(self, other) -> DenseSeries:
        if isinstance(other, DenseSeries):
            return other
        return DenseSeries([as_rational(other)], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return DenseSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], n)

    __radd__ = __add__

    def __neg__(self):
        return DenseSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DenseSeries):
            c = as_rational(other)
            return DenseSeries([a * c for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * (n + 1)
        # iterate over the sparser side's support
        sa = [(i, c) for i, c in enumerate(a[: n + 1]) if c]
        sb = [(j, c) for j, c in enumerate(b[: n + 1]) if c]
        if len(sa) > len(sb):
            sa, sb = sb, sa
        for i, ca in sa:
            for j, cb in sb:
                if i + j > n:
                    break
                out[i + j] += ca * cb
        return DenseSeries(out, n)

    __rmul__ = __mul__

    def invert(self) -> DenseSeries:
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series has zero constant term")
        inv0 = ONE / a[0]
        support = [(k, c) for k, c in enumerate(a) if k and c]
        out = [ZERO] * (self.order + 1)
        out[0] = inv0
        for n in range(1, self.order + 1):
            s = ZERO
            for k, c in support:
                if k > n:
                    break
                s += c * out[n - k]
            out[n] = -s * inv0
        return DenseSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, DenseSeries):
            return self * other.invert()
        return self * (ONE / as_rational(other))

    def power(self, alpha) -> DenseSeries:
        """``self ** alpha`` for rational ``alpha``; needs a constant term whose power is rational."""
        alpha = as_rational(alpha)
        a = self.coeffs
        a0 = a[0]
        if not a0:
            raise ZeroDivisionError("rational power of a series with zero constant term")
        g0 = _rational_power(a0, alpha)
        support = [(k, c) for k, c in enumerate(a) if k and c]
        out = [ZERO] * (self.order + 1)
        out[0] = g0
        inv_a0 = ONE / a0
        for n in range(1, self.order + 1):
            s = ZERO
            for k, c in support:
                if k > n:
                    break
                s += ((alpha + 1) * k - n) * c * out[n - k]
            out[n] = s * inv_a0 / n
        return DenseSeries(out, self.order)

    def sqrt(self) -> DenseSeries:
        return self.power(Rational(1, 2))

    def __pow__(self, alpha):
        if isinstance(alpha, int) and alpha >= 0:
            result = DenseSeries([ONE], self.order)
            base = self
            while alpha:
                if alpha & 1:
                    result = result * base
                alpha >>= 1
                if alpha:
                    base = base * base
            return result
        return self.power(alpha)

    def even_part_as_half_index(self) -> DenseSeries:
        """Map sum c_{2k} t^{2k} to sum c_{2k} x^k; odd coefficients must vanish."""
        if any(self.coeffs[1::2]):
            raise ValueError("series has nonzero odd coefficients")
        return DenseSeries(self.coeffs[::2], self.order // 2)

    def to_multi(self, var: str) -> MultiSeries:
        from .multi import WEIGHTS

        terms = {(n,): c for n, c in enumerate(self.coeffs) if c}
        return MultiSeries((var,), terms, total=WEIGHTS[var] * self.order if WEIGHTS[var] else None,
                           caps=None if WEIGHTS[var] else {var: self.order})

    def __eq__(self, other):
        if not isinstance(other, DenseSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:12])
        more = ", ..." if self.order >= 12 else ""
        return f"DenseSeries([{shown}{more}], order={self.order})"


def _rational_power(a0: Rational, alpha: Rational) -> Rational:
    if alpha.denominator == 1:
        return a0 ** int(alpha)
    if alpha.denominator == 2:
        root = rational_sqrt(a0)
        return root ** int(alpha.numerator)
    if a0 == 1:
        return ONE
    raise ValueError(f"{a0}**{alpha} is not a rational number this module can form")
