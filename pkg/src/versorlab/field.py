"""Exact arithmetic in the number field Q(sqrt2, tau), tau = (1 + sqrt5)/2.

An element is stored as integer numerators over one positive common
denominator,

    (a + b*sqrt2 + c*tau + d*sqrt2*tau) / den,

reduced so that gcd(a, b, c, d, den) == 1.  This is a canonical form:
two elements are equal iff their stored tuples are equal, which is what
lets multivectors and roots be deduplicated by hashing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = ["FieldScalar", "Scalar", "ZERO", "ONE", "SQRT2", "TAU", "SIGMA", "to_float"]

Scalar = Union["FieldScalar", int, Fraction]

_F_SQRT2 = math.sqrt(2.0)
_F_TAU = (1.0 + math.sqrt(5.0)) / 2.0


def _reduce(a: int, b: int, c: int, d: int, den: int) -> tuple[int, int, int, int, int]:
    if den < 0:
        a, b, c, d, den = -a, -b, -c, -d, -den
    if not (a or b or c or d):
        return 0, 0, 0, 0, 1
    g = math.gcd(a, b, c, d, den)
    if g != 1:
        a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
    return a, b, c, d, den


def _interval_mul(lo1: int, hi1: int, lo2: int, hi2: int) -> tuple[int, int]:
    p = (lo1 * lo2, lo1 * hi2, hi1 * lo2, hi1 * hi2)
    return min(p), max(p)


@total_ordering
class FieldScalar:
    """Immutable element of Q(sqrt2, tau).

    Ordering operators compare the real values (the embedding with
    sqrt2 > 0 and tau > 1); use :meth:`key` for a cheap structural sort key.
    """

    __slots__ = ("_a", "_b", "_c", "_d", "_den", "_hash")

    def __init__(self, c0: int | Fraction = 0, c1: int | Fraction = 0,
                 c2: int | Fraction = 0, c3: int | Fraction = 0) -> None:
        fr = [Fraction(x) for x in (c0, c1, c2, c3)]
        den = math.lcm(*(f.denominator for f in fr))
        nums = [f.numerator * (den // f.denominator) for f in fr]
        self._set(*_reduce(nums[0], nums[1], nums[2], nums[3], den))

    def _set(self, a: int, b: int, c: int, d: int, den: int) -> None:
        self._a, self._b, self._c, self._d, self._den = a, b, c, d, den
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, den: int) -> FieldScalar:
        obj = cls.__new__(cls)
        obj._set(*_reduce(a, b, c, d, den))
        return obj

    @classmethod
    def coerce(cls, x: Scalar) -> FieldScalar:
        if isinstance(x, FieldScalar):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 0, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, 0, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to FieldScalar")

    # -- structure ---------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Rational coefficients on the basis (1, sqrt2, tau, sqrt2*tau)."""
        den = self._den
        return (Fraction(self._a, den), Fraction(self._b, den),
                Fraction(self._c, den), Fraction(self._d, den))

    def key(self) -> tuple[int, int, int, int, int]:
        return (self._a, self._b, self._c, self._d, self._den)

    def is_zero(self) -> bool:
        return not (self._a or self._b or self._c or self._d)

    def is_rational(self) -> bool:
        return not (self._b or self._c or self._d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FieldScalar.coerce(other)
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return (self._a == other._a and self._b == other._b and self._c == other._c
                and self._d == other._d and self._den == other._den)

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._a, self._den))
            else:
                self._hash = hash((self._a, self._b, self._c, self._d, self._den))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> FieldScalar:
        obj = FieldScalar.__new__(FieldScalar)
        obj._set(-self._a, -self._b, -self._c, -self._d, self._den)
        return obj

    def __pos__(self) -> FieldScalar:
        return self

    def __add__(self, other: Scalar) -> FieldScalar:
        if not isinstance(other, FieldScalar):
            try:
                other = FieldScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            return FieldScalar._raw(self._a + other._a, self._b + other._b,
                                    self._c + other._c, self._d + other._d, d1)
        return FieldScalar._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1,
                                self._c * d2 + other._c * d1, self._d * d2 + other._d * d1,
                                d1 * d2)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> FieldScalar:
        if not isinstance(other, FieldScalar):
            try:
                other = FieldScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> FieldScalar:
        return FieldScalar.coerce(other) + (-self)

    def __mul__(self, other: Scalar) -> FieldScalar:
        if not isinstance(other, FieldScalar):
            try:
                other = FieldScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        a0, a1, a2, a3 = self._a, self._b, self._c, self._d
        b0, b1, b2, b3 = other._a, other._b, other._c, other._d
        den = self._den * other._den
        if not (a1 or a2 or a3):
            return FieldScalar._raw(a0 * b0, a0 * b1, a0 * b2, a0 * b3, den)
        if not (b1 or b2 or b3):
            return FieldScalar._raw(b0 * a0, b0 * a1, b0 * a2, b0 * a3, den)
        # (A + B tau)(C + D tau) = (AC + BD) + (AD + BC + BD) tau, A..D in Z[sqrt2]
        ac0, ac1 = a0 * b0 + 2 * a1 * b1, a0 * b1 + a1 * b0
        bd0, bd1 = a2 * b2 + 2 * a3 * b3, a2 * b3 + a3 * b2
        ad0, ad1 = a0 * b2 + 2 * a1 * b3, a0 * b3 + a1 * b2
        bc0, bc1 = a2 * b0 + 2 * a3 * b1, a2 * b1 + a3 * b0
        return FieldScalar._raw(ac0 + bd0, ac1 + bd1, ad0 + bc0 + bd0, ad1 + bc1 + bd1, den)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> FieldScalar:
        if not isinstance(other, FieldScalar):
            try:
                other = FieldScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if other.is_rational():
            if other.is_zero():
                raise ZeroDivisionError("division by zero in Q(sqrt2, tau)")
            return FieldScalar._raw(self._a * other._den, self._b * other._den,
                                    self._c * other._den, self._d * other._den,
                                    self._den * other._a)
        return self * other.invert()

    def __rtruediv__(self, other: Scalar) -> FieldScalar:
        return FieldScalar.coerce(other) / self

    def __pow__(self, n: int) -> FieldScalar:
        if n < 0:
            return self.invert() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- Galois structure --------------------------------------------------

    def galois_sigma(self) -> FieldScalar:
        """tau -> 1 - tau, sqrt2 fixed."""
        a, b, c, d = self._a, self._b, self._c, self._d
        return FieldScalar._raw(a + c, b + d, -c, -d, self._den)

    def galois_sqrt2(self) -> FieldScalar:
        """sqrt2 -> -sqrt2, tau fixed."""
        return FieldScalar._raw(self._a, -self._b, self._c, -self._d, self._den)

    def norm(self) -> Fraction:
        """Absolute field norm: the product of all four conjugates."""
        x = self * self.galois_sigma()
        n = x * x.galois_sqrt2()
        assert n.is_rational()
        return Fraction(n._a, n._den)

    def invert(self) -> FieldScalar:
        if self.is_zero():
            raise ZeroDivisionError("FieldScalar zero has no inverse")
        if self.is_rational():
            return FieldScalar._raw(self._den, 0, 0, 0, self._a)
        s = self.galois_sigma()
        conj = s * self.galois_sqrt2() * s.galois_sqrt2()
        n = self * conj
        assert n.is_rational()
        return FieldScalar._raw(conj._a * n._den, conj._b * n._den, conj._c * n._den,
                                conj._d * n._den, conj._den * n._a)

    def sqrt(self) -> FieldScalar:
        """Square root of a non-negative rational r when r or 2r is a rational square."""
        if not self.is_rational() or self._a < 0:
            raise ValueError(f"no square root available for {self}")
        p, q = self._a, self._den
        r = math.isqrt(p * q)
        if r * r == p * q:
            return FieldScalar(Fraction(r, q))
        r = math.isqrt(2 * p * q)
        if r * r == 2 * p * q:
            return FieldScalar(0, Fraction(r, 2 * q))
        raise ValueError(f"no square root of {self} in Q(sqrt2, tau)")

    # -- real embedding ----------------------------------------------------

    def sign(self) -> int:
        if self.is_zero():
            return 0
        a, b, c, d = self._a, self._b, self._c, self._d
        try:
            terms = (float(a), float(b) * _F_SQRT2, float(c) * _F_TAU, float(d) * _F_SQRT2 * _F_TAU)
            v = sum(terms)
            if abs(v) > 1e-9 * sum(abs(t) for t in terms):
                return 1 if v > 0 else -1
        except OverflowError:
            pass
        k = 64
        while True:
            lo, hi, _ = self._enclosure(k)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            k *= 2

    def _enclosure(self, k: int) -> tuple[int, int, int]:
        """Integers lo, hi, scale with lo/scale <= 2*den*value <= hi/scale."""
        a, b, c, d = self._a, self._b, self._c, self._d
        x = 1 << k
        s_lo = math.isqrt(2 << (2 * k))
        r_lo = math.isqrt(5 << (2 * k))
        s = (s_lo, s_lo + 1)              # sqrt2 * x
        t2 = (x + r_lo, x + r_lo + 1)     # 2 tau * x
        lo = hi = 2 * a * x * x
        for coef, (l1, h1), (l2, h2) in ((2 * b * x, s, (1, 1)),
                                         (c * x, t2, (1, 1)),
                                         (d, s, t2)):
            if coef == 0:
                continue
            pl, ph = _interval_mul(l1, h1, l2, h2)
            pl, ph = _interval_mul(coef, coef, pl, ph)
            lo += pl
            hi += ph
        return lo, hi, x * x

    def to_decimal(self, precision: int = 64) -> str:
        """Decimal rendering with about ``precision`` bits after the point.

        Correct to within one unit in the last printed digit.
        """
        if precision < 16:
            raise ValueError("precision must be at least 16 bits")
        digits = int(precision * math.log10(2))
        scale = 10 ** digits
        if self.is_rational():
            n = round(Fraction(self._a, self._den) * scale)
        else:
            k = precision + 16
            while True:
                lo, hi, x2 = self._enclosure(k)
                # width of value interval, in units of 10**-digits
                if (hi - lo) * scale < x2 * 2 * self._den:
                    break
                k *= 2
            n = round(Fraction((lo + hi) * scale, 2 * x2 * 2 * self._den))
        sign = "-" if n < 0 else ""
        whole, frac = divmod(abs(n), scale)
        return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"

    def __float__(self) -> float:
        a, b, c, d = self.coefficients
        return float(a) + float(b) * _F_SQRT2 + float(c) * _F_TAU + float(d) * _F_SQRT2 * _F_TAU

    def __lt__(self, other: Scalar) -> bool:
        return (self - FieldScalar.coerce(other)).sign() < 0

    # -- rendering ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"FieldScalar({str(self)!r})"

    def __str__(self) -> str:
        parts = []
        for coef, unit in zip(self.coefficients, ("", "√2", "τ", "√2τ")):
            if coef == 0:
                continue
            mag = abs(coef)
            if unit and mag == 1:
                body = unit
            else:
                body = f"{mag}{unit}"
            parts.append(("-" if coef < 0 else "+", body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sgn, body in parts[1:]:
            out += f" {sgn} {body}"
        return out

    def to_json(self, precision: int = 64) -> dict:
        return {"exact": [str(c) for c in self.coefficients],
                "decimal": self.to_decimal(precision)}


def to_float(a: Scalar, precision: int = 64) -> str:
    """Decimal string for ``a``; see :meth:`FieldScalar.to_decimal`."""
    return FieldScalar.coerce(a).to_decimal(precision)


ZERO = FieldScalar()
ONE = FieldScalar(1)
SQRT2 = FieldScalar(0, 1)
TAU = FieldScalar(0, 0, 1)
SIGMA = FieldScalar(1, 0, -1)
HALF = FieldScalar(Fraction(1, 2))
