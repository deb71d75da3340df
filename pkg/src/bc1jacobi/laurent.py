"""Sparse exact-rational Laurent and ordinary polynomials in one variable.

Three variable tags are in play and are never mixed silently:

* ``z``  -- Laurent polynomials, negative exponents allowed,
* ``x``  -- ordinary polynomials in x = (z + 1/z)/2,
* ``xi`` -- ordinary polynomials in the spectral variable.

All values are immutable after construction and all operations are pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NonDivisible, VariableMismatch

VAR_Z = "z"
VAR_X = "x"
VAR_XI = "xi"

_VARS = (VAR_Z, VAR_X, VAR_XI)


def rat(value) -> Fraction:
    """Coerce an int, a 'p/q' string or a Fraction to a Fraction.

    >>> rat("3/4")
    Fraction(3, 4)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class LaurentPoly:
    """Finite map from integer exponent to nonzero rational coefficient.

    >>> f = LaurentPoly(VAR_Z, {1: 1, -1: -1})
    >>> f * f == LaurentPoly(VAR_Z, {2: 1, 0: -2, -2: 1})
    True
    """

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms=None):
        if var not in _VARS:
            raise ValueError(f"unknown variable tag {var!r}")
        clean: dict[int, Fraction] = {}
        for exp, coef in (terms or {}).items():
            c = rat(coef)
            if c:
                clean[int(exp)] = c
        if var != VAR_Z and clean and min(clean) < 0:
            raise DomainError(f"negative exponent in {var}-polynomial")
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var: str = VAR_Z) -> LaurentPoly:
        return cls(var, {})

    @classmethod
    def one(cls, var: str = VAR_Z) -> LaurentPoly:
        return cls(var, {0: 1})

    @classmethod
    def const(cls, c, var: str = VAR_Z) -> LaurentPoly:
        return cls(var, {0: rat(c)})

    @classmethod
    def monomial(cls, exp: int, coef=1, var: str = VAR_Z) -> LaurentPoly:
        return cls(var, {exp: rat(coef)})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp: int) -> Fraction:
        return self.terms.get(exp, Fraction(0))

    def degree(self) -> int:
        """Largest exponent; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.terms)

    def valuation(self) -> int:
        """Smallest exponent; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self.terms)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.degree()]

    def as_constant(self):
        """The constant value if this is a constant polynomial, else None."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {0}:
            return self.terms[0]
        return None

    def is_symmetric(self) -> bool:
        """True if invariant under exponent negation (z-polynomials)."""
        return all(self.coeff(-e) == c for e, c in self.terms.items())

    # -- ring operations ---------------------------------------------------

    def _check(self, other: LaurentPoly) -> None:
        if self.var != other.var:
            raise VariableMismatch(f"{self.var} vs {other.var}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.var)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPoly(self.var, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = rat(other)
            if not c:
                return LaurentPoly.zero(self.var)
            return LaurentPoly(self.var, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = LaurentPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                return self == LaurentPoly.const(other, self.var)
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by z^n (z-polynomials only)."""
        if self.var != VAR_Z:
            raise VariableMismatch("shift is only defined for z-polynomials")
        return LaurentPoly(self.var, {e + n: c for e, c in self.terms.items()})

    def reflect(self) -> LaurentPoly:
        """The substitution z -> 1/z."""
        if self.var != VAR_Z:
            raise VariableMismatch("reflect is only defined for z-polynomials")
        return LaurentPoly(self.var, {-e: c for e, c in self.terms.items()})

    def theta(self) -> LaurentPoly:
        """The derivation z d/dz (exponent-weighted coefficients)."""
        return LaurentPoly(self.var, {e: e * c for e, c in self.terms.items() if e})

    def evaluate(self, point) -> Fraction:
        """Evaluate at a nonzero rational point."""
        p = rat(point)
        if p == 0 and self.terms and min(self.terms) < 0:
            raise ZeroDivisionError("pole at 0")
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * (p ** e)
        return total

    def substitute_linear(self, a, b) -> LaurentPoly:
        """Return p(a*t + b) for an ordinary polynomial p (Horner)."""
        if self.terms and min(self.terms) < 0:
            raise DomainError("linear substitution needs nonnegative exponents")
        if not self.terms:
            return LaurentPoly.zero(self.var)
        lin = LaurentPoly(self.var, {1: rat(a), 0: rat(b)})
        result = LaurentPoly.zero(self.var)
        for e in range(self.degree(), -1, -1):
            result = result * lin + LaurentPoly.const(self.coeff(e), self.var)
        return result

    def retag(self, var: str) -> LaurentPoly:
        """Same coefficients under another variable tag."""
        return LaurentPoly(var, dict(self.terms))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "terms": [
                {"exp": e, "coef": str(self.terms[e])} for e in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> LaurentPoly:
        return cls(data["var"], {t["exp"]: rat(t["coef"]) for t in data["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            elif e == 1:
                bits.append(f"{c}*{self.var}")
            else:
                bits.append(f"{c}*{self.var}^{e}")
        return " + ".join(bits).replace("+ -", "- ")


# -- division and gcd ------------------------------------------------------


def _poly_divmod(a: dict, b: dict):
    """Division with remainder on exponent->coefficient dicts, exponents >= 0."""
    db = max(b)
    lb = b[db]
    q: dict[int, Fraction] = {}
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        c = r[dr] / lb
        e = dr - db
        q[e] = c
        for be, bc in b.items():
            ne = be + e
            nv = r.get(ne, Fraction(0)) - c * bc
            if nv:
                r[ne] = nv
            else:
                r.pop(ne, None)
    return q, r


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient in the Laurent ring; raises NonDivisible otherwise.

    >>> z = LaurentPoly.monomial(1)
    >>> exact_divide(z - z.reflect(), LaurentPoly.one() - z.reflect())
    1*z + 1
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.var)
    vn = num.valuation()
    vd = den.valuation()
    a = {e - vn: c for e, c in num.terms.items()}
    b = {e - vd: c for e, c in den.terms.items()}
    q, r = _poly_divmod(a, b)
    if r:
        raise NonDivisible(f"({num!r}) is not divisible by ({den!r})")
    offset = vn - vd
    try:
        return LaurentPoly(num.var, {e + offset: c for e, c in q.items()})
    except DomainError:
        raise NonDivisible("quotient has negative exponents") from None


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd, normalized to valuation 0 (unique up to units z^m * c)."""
    a._check(b)
    if a.is_zero():
        g = b
    elif b.is_zero():
        g = a
    else:
        u = {e - a.valuation(): c for e, c in a.terms.items()}
        v = {e - b.valuation(): c for e, c in b.terms.items()}
        while v:
            _, r = _poly_divmod(u, v)
            u, v = v, r
        g = LaurentPoly(a.var, u)
    if g.is_zero():
        return g
    g = g.shift(-g.valuation()) if g.var == VAR_Z else g
    return g * (1 / g.leading_coeff())


# -- Steinberg decomposition and x <-> z conversion -------------------------

_DELTA = LaurentPoly(VAR_Z, {1: 1, -1: -1})
_XLIFT = LaurentPoly(VAR_Z, {1: Fraction(1, 2), -1: Fraction(1, 2)})


def sym_z_to_x(f: LaurentPoly) -> LaurentPoly:
    """Rewrite a reflection-invariant z-Laurent polynomial in x = (z+1/z)/2."""
    if f.var != VAR_Z:
        raise VariableMismatch("expected a z-polynomial")
    rem = f
    out: dict[int, Fraction] = {}
    while not rem.is_zero():
        n = rem.degree()
        if n < 0 or rem.coeff(n) != rem.coeff(-n):
            raise DomainError("polynomial is not reflection-invariant")
        if n == 0:
            out[0] = rem.coeff(0)
            break
        c = rem.coeff(n) * 2 ** n
        out[n] = c
        rem = rem - c * _XLIFT ** n
    return LaurentPoly(VAR_X, out)


def x_to_z(p: LaurentPoly) -> LaurentPoly:
    """Substitute x = (z+1/z)/2 into an x-polynomial."""
    if p.var != VAR_X:
        raise VariableMismatch("expected an x-polynomial")
    if p.is_zero():
        return LaurentPoly.zero(VAR_Z)
    result = LaurentPoly.zero(VAR_Z)
    for e in range(p.degree(), -1, -1):
        result = result * _XLIFT + LaurentPoly.const(p.coeff(e), VAR_Z)
    return result


def steinberg_split(f: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split f = f1 + f2*z with f1, f2 polynomials in x = (z+1/z)/2.

    >>> steinberg_split(LaurentPoly.monomial(2))
    (-1, 2*x)
    """
    if f.var != VAR_Z:
        raise VariableMismatch("expected a z-polynomial")
    s = f.reflect()
    z = LaurentPoly.monomial(1)
    zinv = LaurentPoly.monomial(-1)
    f1 = exact_divide(z * s - zinv * f, _DELTA)
    f2 = exact_divide(f - s, _DELTA)
    return sym_z_to_x(f1), sym_z_to_x(f2)


def steinberg_join(f1: LaurentPoly, f2: LaurentPoly) -> LaurentPoly:
    """Inverse of steinberg_split: f1 + f2*z as a z-Laurent polynomial."""
    return x_to_z(f1) + x_to_z(f2).shift(1)


# -- root multiplicity ------------------------------------------------------


@dataclass(frozen=True)
class Multiplicity:
    """Root multiplicity pair (k1, k2) with its derived constants."""

    k1: Fraction
    k2: Fraction

    def __init__(self, k1, k2):
        object.__setattr__(self, "k1", rat(k1))
        object.__setattr__(self, "k2", rat(k2))

    @property
    def rho(self) -> Fraction:
        return (self.k1 + 2 * self.k2) / 2

    @property
    def alpha(self) -> Fraction:
        return self.k1 + self.k2 - Fraction(1, 2)

    @property
    def beta(self) -> Fraction:
        return self.k2 - Fraction(1, 2)

    def shifted(self, ell) -> Multiplicity:
        """k + ell for a pair-like ell."""
        e1, e2 = ell
        return Multiplicity(self.k1 + rat(e1), self.k2 + rat(e2))

    @property
    def plus(self) -> Multiplicity:
        """k + (1, 0)."""
        return self.shifted((1, 0))

    @property
    def minus(self) -> Multiplicity:
        """k + (-1, 1)."""
        return self.shifted((-1, 1))

    def is_nonneg_integer(self) -> bool:
        return (
            self.k1.denominator == 1
            and self.k2.denominator == 1
            and self.k1 >= 0
            and self.k2 >= 0
        )

    @classmethod
    def parse(cls, text: str) -> Multiplicity:
        """Parse 'p/q,p/q' as used by the CLI."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'k1,k2', got {text!r}")
        return cls(rat(parts[0].strip()), rat(parts[1].strip()))

    def __iter__(self):
        return iter((self.k1, self.k2))

    def __repr__(self):
        return f"({self.k1},{self.k2})"
