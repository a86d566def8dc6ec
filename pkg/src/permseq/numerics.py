"""High-precision reals, continued fractions and cross-over root finding.

Real-valued quantities are carried as :class:`PrecReal`, a thin wrapper
around an ``mpmath.mpf`` that remembers the binary precision it was
computed at.  Continued fractions are expanded from an interval enclosure
of the input so that a partial quotient is only emitted when it is certain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import mpmath

DEFAULT_PRECISION = 256

# Relative half-width of the enclosure placed around a PrecReal, in ulps.
ENCLOSURE_ULPS = 16


class PrecisionError(ArithmeticError):
    """Working precision is too low to decide the next partial quotient."""


class NoCrossingError(ValueError):
    """Two curves do not cross below the scan ceiling."""


def _coerce(x, prec):
    if isinstance(x, PrecReal):
        return x.value
    if isinstance(x, Fraction):
        with mpmath.workprec(prec):
            return mpmath.mpf(x.numerator) / x.denominator
    with mpmath.workprec(prec):
        return mpmath.mpf(x)


@dataclass(frozen=True)
class PrecReal:
    """A real number together with the binary precision it is good to."""

    value: mpmath.mpf
    precision: int = DEFAULT_PRECISION

    @classmethod
    def of(cls, x, precision: int = DEFAULT_PRECISION) -> "PrecReal":
        return cls(_coerce(x, precision), precision)

    def _binary(self, other, op, reflected=False):
        prec = self.precision
        if isinstance(other, PrecReal):
            prec = min(prec, other.precision)
        with mpmath.workprec(prec):
            a = self.value
            b = _coerce(other, prec)
            if reflected:
                a, b = b, a
            return PrecReal(op(a, b), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: a + b, True)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: a - b, True)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: a * b, True)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: a / b, True)

    def __pow__(self, other):
        return self._binary(other, lambda a, b: mpmath.power(a, b))

    def __neg__(self):
        return PrecReal(-self.value, self.precision)

    def __abs__(self):
        return PrecReal(abs(self.value), self.precision)

    def _cmp_value(self, other):
        return _coerce(other, self.precision)

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __float__(self):
        return float(self.value)

    def exp(self) -> "PrecReal":
        with mpmath.workprec(self.precision):
            return PrecReal(mpmath.exp(self.value), self.precision)

    def log(self) -> "PrecReal":
        if self.value <= 0:
            raise ValueError("logarithm of a non-positive number")
        with mpmath.workprec(self.precision):
            return PrecReal(mpmath.log(self.value), self.precision)

    def as_fraction(self) -> Fraction:
        """Exact binary value of the stored mpf."""
        sign, man, exp, _ = self.value._mpf_
        man, exp = (-1) ** sign * int(man), int(exp)
        return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)

    def __repr__(self):
        digits = max(6, int(self.precision * 0.30103) - 2)
        return f"PrecReal({mpmath.nstr(self.value, min(digits, 30))}, prec={self.precision})"


def hp_log(x: Union[int, Fraction, str], precision: int = DEFAULT_PRECISION) -> PrecReal:
    """Natural logarithm of a positive rational at ``precision`` bits."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"hp_log domain error: {x} <= 0")
    # a few guard bits keep the final rounding within the advertised ulps
    with mpmath.workprec(precision + 16):
        val = mpmath.log(mpmath.mpf(x.numerator)) - mpmath.log(mpmath.mpf(x.denominator))
    with mpmath.workprec(precision):
        return PrecReal(+val, precision)


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int
    a: int

    def as_pair(self) -> tuple[int, int]:
        return (self.p, self.q)


def _enclosure(rho: PrecReal) -> tuple[Fraction, Fraction]:
    v = rho.as_fraction()
    slack = abs(v) * Fraction(ENCLOSURE_ULPS, 2 ** rho.precision)
    return v - slack, v + slack


def cf_expand(rho, q_limit: int) -> list[Convergent]:
    """Convergents of ``rho`` with ``q <= q_limit`` plus the first beyond it.

    ``rho`` may be an exact ``int``/``Fraction`` (expansion terminates) or a
    :class:`PrecReal`, in which case both ends of an enclosure are expanded in
    lockstep and :class:`PrecisionError` is raised as soon as they disagree.
    """
    if isinstance(rho, PrecReal):
        if rho.value <= 0:
            raise ValueError("cf_expand needs rho > 0")
        lo, hi = _enclosure(rho)
    else:
        lo = hi = Fraction(rho)
        if lo <= 0:
            raise ValueError("cf_expand needs rho > 0")

    out: list[Convergent] = []
    p2, q2, p1, q1 = 0, 1, 1, 0
    n = 0
    while True:
        a_lo, a_hi = math.floor(lo), math.floor(hi)
        if a_lo != a_hi:
            raise PrecisionError(
                f"partial quotient {n} ambiguous at {getattr(rho, 'precision', '?')} bits "
                f"(between {a_lo} and {a_hi}); retry with more precision"
            )
        a = a_lo
        p, q = a * p1 + p2, a * q1 + q2
        out.append(Convergent(n, p, q, a))
        if q > q_limit:
            break
        f_lo, f_hi = lo - a, hi - a
        if f_lo == 0 and f_hi == 0:
            break
        if f_lo <= 0:
            # the enclosure straddles an integer: the expansion may terminate here
            raise PrecisionError(f"tail {n} ambiguous; retry with more precision")
        lo, hi = 1 / f_hi, 1 / f_lo
        p2, q2, p1, q1 = p1, q1, p, q
        n += 1
    return out


def max_partial_quotient(rho, q_limit: int) -> int:
    return max(c.a for c in cf_expand(rho, q_limit) if c.q <= q_limit)


def solve_crossover(
    lhs: Callable[[mpmath.mpf], mpmath.mpf],
    rhs: Callable[[mpmath.mpf], mpmath.mpf],
    x_min=2,
    *,
    rel_tol: float = 1e-6,
    ceiling=mpmath.mpf(10) ** 1000,
    max_bisections: int = 200,
    precision: int = DEFAULT_PRECISION,
) -> mpmath.mpf:
    """Locate where ``lhs(x) == rhs(x)`` beyond ``x_min``.

    The sign of ``lhs - rhs`` at ``x_min`` is taken as the sign before the
    crossing; ``x`` is doubled until it flips and the bracket is bisected.
    Bisection stops once the bracket is ``rel_tol`` narrow and the two sides
    agree to ``rel_tol`` relatively, or after ``max_bisections`` halvings.
    """
    with mpmath.workprec(precision):
        x = mpmath.mpf(x_min)

        def gap(t):
            return lhs(t) - rhs(t)

        start = gap(x) > 0
        lo = x
        while (gap(x) > 0) == start:
            lo = x
            x *= 2
            if x > ceiling:
                raise NoCrossingError(f"no crossing between {x_min} and {mpmath.nstr(ceiling, 5)}")
        hi = x
        for _ in range(max_bisections):
            mid = (lo + hi) / 2
            if (gap(mid) > 0) == start:
                lo = mid
            else:
                hi = mid
            r = rhs(mid)
            if (hi - lo) <= rel_tol * lo and abs(lhs(mid) - r) <= rel_tol * abs(r):
                break
        return (lo + hi) / 2
