"""Exact inner products for the circle and interval realizations.

Two modes:

* constant-term: the z^0 coefficient of reflect(f) * g * delta_k, i.e. the
  circle integral divided by 2*pi.  Needs k1, k2 nonnegative integers.
* moments: Steinberg-split both arguments and pair against the 2x2 matrix
  weight on [-1,1] using exact normalized moments; defined for all
  multiplicities with alpha, beta > -1.

The moments value is reported relative to the transcendental total mass of
the weight and then rescaled by the constant-term of delta_k whenever k is a
nonnegative integer pair, which makes the two modes agree exactly there.
For non-integer k the rescale factor is 1 (values stay relative to the
total mass); orthogonality statements are unaffected by the overall factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .laurent import (
    VAR_X,
    VAR_Z,
    LaurentPoly,
    Multiplicity,
    rat,
    steinberg_split,
)

MODE_CONSTANT_TERM = "ct"
MODE_MOMENTS = "moments"


@dataclass(frozen=True)
class PairingKind:
    mode: str
    k: Multiplicity

    def __post_init__(self):
        if self.mode not in (MODE_CONSTANT_TERM, MODE_MOMENTS):
            raise ValueError(f"unknown pairing mode {self.mode!r}")
        if self.mode == MODE_CONSTANT_TERM and not self.k.is_nonneg_integer():
            raise DomainError(
                "constant-term pairing needs nonnegative integer multiplicities"
            )


def weight_on_circle(k: Multiplicity) -> LaurentPoly:
    """delta_k = (1-(z+1/z)/2)^k1 (1-(z^2+1/z^2)/2)^k2 for integer k >= 0."""
    if not k.is_nonneg_integer():
        raise DomainError("circle weight needs nonnegative integer multiplicities")
    half = Fraction(1, 2)
    a = LaurentPoly(VAR_Z, {0: 1, 1: -half, -1: -half})
    b = LaurentPoly(VAR_Z, {0: 1, 2: -half, -2: -half})
    return a ** int(k.k1) * b ** int(k.k2)


@dataclass(frozen=True)
class MomentTable:
    """Normalized moments nu_m of (1-x)^alpha (1+x)^beta on [-1,1]."""

    alpha: Fraction
    beta: Fraction
    nu: tuple[Fraction, ...]


def normalized_moments(alpha, beta, count: int) -> MomentTable:
    """Moments from the integration-by-parts recurrence

        (m + alpha + beta + 2) nu_{m+1} = (beta - alpha) nu_m + m nu_{m-1}.

    >>> normalized_moments(Fraction(1,2), Fraction(-1,2), 2).nu[1]
    Fraction(-1, 2)
    """
    alpha, beta = rat(alpha), rat(beta)
    if alpha <= -1 or beta <= -1:
        raise DomainError("weight exponents must exceed -1")
    if count < 1:
        raise DomainError("need at least one moment")
    nu = [Fraction(1)]
    for m in range(0, count):
        d = m + alpha + beta + 2
        if d == 0:
            raise DomainError("degenerate moment recurrence")
        prev = nu[m - 1] if m >= 1 else Fraction(0)
        nu.append(((beta - alpha) * nu[m] + m * prev) / d)
    return MomentTable(alpha, beta, tuple(nu))


_MOMENT_CACHE: dict[tuple[Fraction, Fraction, int], MomentTable] = {}


def _moments_for(k: Multiplicity, count: int) -> MomentTable:
    key = (k.alpha, k.beta, count)
    table = _MOMENT_CACHE.get(key)
    if table is None:
        table = normalized_moments(k.alpha, k.beta, count)
        _MOMENT_CACHE[key] = table
    return table


def _moment_value(p: LaurentPoly, k: Multiplicity) -> Fraction:
    """Integral of the x-polynomial p against the weight, over its total mass."""
    if p.is_zero():
        return Fraction(0)
    table = _moments_for(k, p.degree() + 1)
    return sum((c * table.nu[e] for e, c in p.terms.items()), Fraction(0))


def _rescale(k: Multiplicity) -> Fraction:
    if k.is_nonneg_integer():
        return weight_on_circle(k).coeff(0)
    return Fraction(1)


def pair_scalar(f: LaurentPoly, g: LaurentPoly, kind: PairingKind) -> Fraction:
    """The sesquilinear pairing (f, g); conjugation on the circle is z -> 1/z.

    >>> k = Multiplicity(1, 0)
    >>> kind = PairingKind(MODE_CONSTANT_TERM, k)
    >>> pair_scalar(LaurentPoly.one(), LaurentPoly.monomial(1), kind)
    Fraction(-1, 2)
    """
    if kind.mode == MODE_CONSTANT_TERM:
        return (f.reflect() * g * weight_on_circle(kind.k)).coeff(0)
    return pair_vector(steinberg_split(f), steinberg_split(g), kind.k)


def pair_vector(p, q, k: Multiplicity) -> Fraction:
    """Pairing of two (f1, f2) vectors against the matrix weight (1 x; x 1)w."""
    p1, p2 = p
    q1, q2 = q
    for h in (p1, p2, q1, q2):
        if h.var != VAR_X:
            raise DomainError("vector pairing expects x-polynomials")
    x = LaurentPoly.monomial(1, var=VAR_X)
    integrand = p1 * q1 + p2 * q2 + x * (p1 * q2 + p2 * q1)
    return _moment_value(integrand, k) * _rescale(k)


def pairing_for(k: Multiplicity) -> PairingKind:
    """Constant-term mode when available, moments otherwise."""
    if k.is_nonneg_integer():
        return PairingKind(MODE_CONSTANT_TERM, k)
    return PairingKind(MODE_MOMENTS, k)
