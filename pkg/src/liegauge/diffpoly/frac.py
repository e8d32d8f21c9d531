"""Fractions of differential polynomials.

Normalization is deliberately lightweight: integer content, a common
monomial factor, a sign convention on the denominator, and an exact-division
fold when the denominator happens to divide the numerator.  Full multivariate
gcd is not attempted; equality is decided by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .core import RAT, RATS, DiffPoly, exact_divide, intify_terms, leading_monomial, to_rat


def _content_normalize(num: DiffPoly, den: DiffPoly):
    # scale both by one rational so all coefficients are integers with gcd 1
    L = 1
    for c in list(num.terms.values()) + list(den.terms.values()):
        d = 1 if isinstance(c, int) else int(c.denominator)
        L = L * d // gcd(L, d)
    G = 0
    for c in list(num.terms.values()) + list(den.terms.values()):
        G = gcd(G, abs(int(c * L)))
    if G == 0:
        G = 1
    scale = RAT(L, G)
    if scale != 1:
        num = num * scale
        den = den * scale
    return DiffPoly(intify_terms(num.terms)), DiffPoly(intify_terms(den.terms))


def _common_mono(num: DiffPoly, den: DiffPoly):
    monos = list(num.terms) + list(den.terms)
    if any(not m for m in monos):
        return None
    common = dict(monos[0])
    for m in monos[1:]:
        d = dict(m)
        common = {k: min(e, d[k]) for k, e in common.items() if k in d}
        if not common:
            return None
    return tuple(sorted(common.items()))


def _divide_out_mono(p: DiffPoly, mono) -> DiffPoly:
    out = {}
    for m, c in p.terms.items():
        d = dict(m)
        for k, e in mono:
            d[k] -= e
            if not d[k]:
                del d[k]
        out[tuple(sorted(d.items()))] = c
    return DiffPoly(out)


class DiffFrac:
    """A quotient of differential polynomials with nonzero denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if isinstance(num, RATS):
            num = DiffPoly.const(num)
        if den is None:
            den = DiffPoly.one()
        elif isinstance(den, RATS):
            den = DiffPoly.const(den)
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num: DiffPoly, den: DiffPoly):
        if not num.terms:
            return DiffPoly.zero(), DiffPoly.one()
        if den.is_constant():
            c = den.constant_value()
            return num / c, DiffPoly.one()
        mono = _common_mono(num, den)
        if mono:
            num = _divide_out_mono(num, mono)
            den = _divide_out_mono(den, mono)
        q = exact_divide(num, den)
        if q is not None:
            return q, DiffPoly.one()
        num, den = _content_normalize(num, den)
        if den.terms[leading_monomial(den)] < 0:
            num, den = -num, -den
        return num, den

    # -- helpers -------------------------------------------------------------

    @staticmethod
    def of(x) -> "DiffFrac":
        if isinstance(x, DiffFrac):
            return x
        if isinstance(x, (DiffPoly,) + RATS):
            return DiffFrac(x)
        raise TypeError(f"cannot coerce {x!r} to DiffFrac")

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den == DiffPoly.one()

    def as_poly(self) -> DiffPoly:
        if not self.is_polynomial():
            raise ValueError("denominator is not 1")
        return self.num

    def inverse(self) -> "DiffFrac":
        if self.is_zero():
            raise ZeroDivisionError
        return DiffFrac(self.den, self.num)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return DiffFrac(self.num + other.num, self.den)
        return DiffFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return DiffFrac(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DiffFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return DiffFrac(self.num**e, self.den**e)

    def derivative(self, times: int = 1) -> "DiffFrac":
        f = self
        for _ in range(times):
            f = DiffFrac(
                f.num.derivative() * f.den - f.num * f.den.derivative(),
                f.den * f.den,
            )
        return f

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    # equality is by cross-multiplication while storage is only weakly
    # normalized, so DiffFrac stays unhashable (defining __eq__ already
    # sets __hash__ to None)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        from .grammar import frac_to_text

        return f"DiffFrac({frac_to_text(self)})"


def _coerce(x):
    if isinstance(x, DiffFrac):
        return x
    if isinstance(x, (DiffPoly,) + RATS):
        return DiffFrac(x)
    return NotImplemented
