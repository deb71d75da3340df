"""Quotients of Laurent polynomials in z, kept in a canonical form.

Canonical form: gcd(num, den) = 1 over the Laurent ring, den has valuation 0
and leading coefficient 1.  This makes equality a plain pair comparison and
is what coefficient-exact operator identities rely on.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import PoleAtInfinity
from .laurent import VAR_Z, LaurentPoly, exact_divide, laurent_gcd, rat


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction, str)):
            num = LaurentPoly.const(rat(num))
        if den is None:
            den = LaurentPoly.one()
        elif isinstance(den, (int, Fraction, str)):
            den = LaurentPoly.const(rat(den))
        if num.var != VAR_Z or den.var != VAR_Z:
            raise ValueError("RatFunc is defined over z-polynomials")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == LaurentPoly.one()

    def as_constant(self):
        """Constant value if this is a scalar, else None."""
        if not self.is_polynomial():
            return None
        return self.num.as_constant()

    # -- field operations ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(LaurentPoly.const(other))
        raise TypeError(f"cannot coerce {other!r} to RatFunc")

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero RatFunc")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def reflect(self) -> RatFunc:
        """The substitution z -> 1/z."""
        return RatFunc(self.num.reflect(), self.den.reflect())

    def theta(self) -> RatFunc:
        """z d/dz by the quotient rule."""
        return RatFunc(
            self.num.theta() * self.den - self.num * self.den.theta(),
            self.den * self.den,
        )

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError(f"pole at {point}")
        return self.num.evaluate(point) / d

    # -- behaviour at infinity ----------------------------------------------

    def value_at_infinity(self) -> Fraction:
        """Limit as z -> infinity; raises PoleAtInfinity if none exists."""
        if self.is_zero():
            return Fraction(0)
        dn, dd = self.num.degree(), self.den.degree()
        if dn > dd:
            raise PoleAtInfinity(repr(self))
        if dn < dd:
            return Fraction(0)
        return self.num.leading_coeff() / self.den.leading_coeff()

    def series_at_infinity(self, order: int) -> list[Fraction]:
        """Coefficients of the expansion in powers of 1/z, up to 1/z^order."""
        if self.is_zero():
            return [Fraction(0)] * (order + 1)
        dd = self.den.degree()
        if self.num.degree() > dd:
            raise PoleAtInfinity(repr(self))
        # In u = 1/z both num*z^-dd and den*z^-dd are polynomials in u and
        # the denominator has nonzero constant term, so series division works.
        nu = {dd - e: c for e, c in self.num.terms.items()}
        de = {dd - e: c for e, c in self.den.terms.items()}
        d0 = de[0]
        out: list[Fraction] = []
        for n in range(order + 1):
            acc = nu.get(n, Fraction(0))
            for m in range(1, n + 1):
                dm = de.get(m)
                if dm:
                    acc -= dm * out[n - m]
            out.append(acc / d0)
        return out

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        if self.is_polynomial():
            return f"({self.num!r})"
        return f"({self.num!r}) / ({self.den!r})"


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return num, LaurentPoly.one()
    g = laurent_gcd(num, den)
    if g != LaurentPoly.one():
        num = exact_divide(num, g)
        den = exact_divide(den, g)
    vd = den.valuation()
    if vd:
        num = num.shift(-vd)
        den = den.shift(-vd)
    lc = den.leading_coeff()
    if lc != 1:
        num = num * (1 / lc)
        den = den * (1 / lc)
    return num, den


ZERO = RatFunc(0)
ONE = RatFunc(1)
