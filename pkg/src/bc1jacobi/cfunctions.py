"""Exact c-function values by Gamma-ratio telescoping, and the identities
tying them to shift factors, norms, and evaluation at the identity.

Standalone Gamma values are never computed.  Every formula pairs numerator
and denominator Gamma arguments with integer offset, which reduces to a
rising factorial; this is exact precisely for even-integer k1 and integer
k2, the domain enforced here.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, GammaPole
from .laurent import LaurentPoly, Multiplicity, rat
from .operators import apply
from .pairings import MODE_CONSTANT_TERM, PairingKind, pair_scalar
from .polynomials import nonsym_jacobi, weyl_word
from .shifts import (
    as_shift,
    composite_shift,
    extract_scalar_action,
    ns_target_label,
    raising_lowering,
)

HALF = Fraction(1, 2)


def gamma_ratio(a, b) -> Fraction:
    """Gamma(a)/Gamma(b) for b - a an integer, via rising factorials.

    A vanishing factor in the denominator telescope is a pole (GammaPole);
    in the numerator telescope it legitimately gives 0.
    """
    a, b = rat(a), rat(b)
    m = b - a
    if m.denominator != 1:
        raise DomainError(f"Gamma arguments differ by a non-integer: {a}, {b}")
    m = int(m)
    if m >= 0:
        prod = Fraction(1)
        for j in range(m):
            f = a + j
            if f == 0:
                raise GammaPole(f"Gamma({a}) / Gamma({b})")
            prod *= f
        return 1 / prod
    prod = Fraction(1)
    for j in range(-m):
        prod *= b + j
    return prod


def _check_multiplicity(k: Multiplicity) -> None:
    if k.k1.denominator != 1 or k.k2.denominator != 1 or int(k.k1) % 2:
        raise DomainError("c-functions need k1 in 2Z and k2 in Z")


def c_tilde(w: str, lam, k: Multiplicity) -> Fraction:
    """The two c-function values attached to lambda(e1) = lam."""
    _check_multiplicity(k)
    lam = rat(lam)
    h = k.k1 / 2
    two = Fraction(2) ** int(-k.k1)
    if w == "1":
        return gamma_ratio(lam, lam + h + k.k2) * gamma_ratio(lam + HALF, lam + h + HALF) * two
    if w == "s":
        return (
            gamma_ratio(lam + HALF, lam + h + HALF)
            * gamma_ratio(lam + 1, lam + h + k.k2 + 1)
            * two
        )
    raise DomainError(f"unknown group element {w!r}")


def c_star(w: str, lam, k: Multiplicity) -> Fraction:
    """The dual c-function values at lambda(e1) = lam."""
    _check_multiplicity(k)
    lam = rat(lam)
    h = k.k1 / 2
    two = Fraction(2) ** int(-k.k1)
    if w == "1":
        return (
            gamma_ratio(-lam - h + HALF, -lam + HALF)
            * gamma_ratio(-lam - h - k.k2, -lam)
            * two
        )
    if w == "s":
        return (
            gamma_ratio(-lam - h + HALF, -lam + HALF)
            * gamma_ratio(-lam - h - k.k2 + 1, -lam + 1)
            * two
        )
    raise DomainError(f"unknown group element {w!r}")


def c_function(kind: str, lam, k: Multiplicity) -> Fraction:
    """Dispatch on 'ct1', 'cts', 'cs1', 'css' (tilde and star families)."""
    table = {
        "ct1": lambda: c_tilde("1", lam, k),
        "cts": lambda: c_tilde("s", lam, k),
        "cs1": lambda: c_star("1", lam, k),
        "css": lambda: c_star("s", lam, k),
    }
    if kind not in table:
        raise DomainError(f"unknown c-function kind {kind!r}")
    return table[kind]()


def _require_norm_domain(k: Multiplicity, ell=None) -> None:
    _check_multiplicity(k)
    if not (k.k1 >= 1 and k.k2 >= 1):
        raise DomainError("need k >= 1 componentwise")
    if ell is not None:
        e1, e2 = ell
        if not (k.k1 - e1 >= 0 and k.k2 - e2 >= 0):
            raise DomainError("need k - ell >= 0 componentwise")


def _in_raising_cone(ell) -> bool:
    ell = as_shift(ell)
    return ell.ell1 >= 0 and ell.rho >= 0 and (ell.ell1, ell.ell2) != (0, 0)


def c_star_quotient(w: str, point, ka: Multiplicity, kb: Multiplicity) -> Fraction:
    """c*_w(-point, ka) / c*_w(-point, kb), telescoped so that poles shared by
    numerator and denominator cancel before evaluation."""
    point = rat(point)
    ha, hb = ka.k1 / 2, kb.k1 / 2
    two = Fraction(2) ** int(kb.k1 - ka.k1)
    first = gamma_ratio(point - ha + HALF, point - hb + HALF)
    off = Fraction(0) if w == "1" else Fraction(1)
    second = gamma_ratio(point - ha - ka.k2 + off, point - hb - kb.k2 + off)
    return first * second * two


def c_tilde_quotient(w: str, point, ka: Multiplicity, kb: Multiplicity) -> Fraction:
    """c~_w(point, ka) / c~_w(point, kb), telescoped the same way."""
    point = rat(point)
    ha, hb = ka.k1 / 2, kb.k1 / 2
    two = Fraction(2) ** int(kb.k1 - ka.k1)
    first = gamma_ratio(point + hb + HALF, point + ha + HALF)
    off = Fraction(0) if w == "1" else Fraction(1)
    second = gamma_ratio(point + hb + kb.k2 + off, point + ha + ka.k2 + off)
    return first * second * two


def quotient_identity(direction: str, ell, m: int, k: Multiplicity):
    """Measured shift factor of the rescaled raising/lowering operator on the
    Laurent family member m, against the c-function quotient.

    Returns (measured, predicted).  direction is 'raising' or 'lowering';
    for 'lowering' the operator has shift -ell."""
    ell = as_shift(ell)
    if not _in_raising_cone(ell):
        raise DomainError("ell must lie in the nonzero raising cone")
    _require_norm_domain(k, ell)
    w = weyl_word(m)
    lam_star = abs(m)
    point = lam_star + k.rho
    if direction == "raising":
        target = ns_target_label(m, ell)
        if target is None:
            raise DomainError("label falls outside the dominant cone")
        op = raising_lowering(ell, k)
        img = apply(op, nonsym_jacobi(m, k))
        measured = extract_scalar_action(img, nonsym_jacobi(target, k.shifted(ell)))
        predicted = c_star_quotient(w, point, k, k.shifted(ell))
        return measured, predicted
    if direction == "lowering":
        down = -ell
        target = ns_target_label(m, down)
        op = raising_lowering(down, k)
        img = apply(op, nonsym_jacobi(m, k))
        measured = extract_scalar_action(img, nonsym_jacobi(target, k.shifted(down)))
        predicted = c_tilde_quotient(w, point, k.shifted(down), k)
        return measured, predicted
    raise DomainError(f"unknown direction {direction!r}")


def norm_formula(m: int, k: Multiplicity):
    """Squared norm under the constant-term pairing against the c-function
    ratio.  Returns (lhs, rhs, constant = lhs/rhs); the constant depends on k
    only, not on the label."""
    _require_norm_domain(k)
    e = nonsym_jacobi(m, k)
    kind = PairingKind(MODE_CONSTANT_TERM, k)
    lhs = pair_scalar(e, e, kind)
    w = weyl_word(m)
    point = abs(m) + k.rho
    rhs = c_star(w, -point, k) / c_tilde(w, point, k)
    return lhs, rhs, lhs / rhs


def evaluation_at_identity(m: int, k: Multiplicity):
    """Value of the family member at z = 1 against the c-function ratio.
    Returns (lhs, rhs); the two agree exactly on the stated domain."""
    _require_norm_domain(k)
    lhs = nonsym_jacobi(m, k).evaluate(1)
    w = weyl_word(m)
    rhs = c_tilde("s", k.rho, k) / c_tilde(w, abs(m) + k.rho, k)
    return lhs, rhs


def lowering_at_identity(ell, k: Multiplicity):
    """Value at z = 1 of the rescaled lowering operator applied to 1, against
    its c-function prediction.  Returns (lhs, rhs)."""
    ell = as_shift(ell)
    if not _in_raising_cone(ell):
        raise DomainError("ell must lie in the nonzero raising cone")
    _require_norm_domain(k, ell)
    op = raising_lowering(-ell, k)
    lhs = apply(op, LaurentPoly.one()).evaluate(1)
    km = k.shifted(-ell)
    rhs = c_tilde("s", km.rho, km) / c_tilde("s", k.rho, k)
    return lhs, rhs


def restriction_property(ell, k: Multiplicity, f: LaurentPoly) -> bool:
    """Evaluation at the identity of the lowered f splits off f(1)."""
    ell = as_shift(ell)
    op = raising_lowering(-ell, k)
    lhs = apply(op, f).evaluate(1)
    rhs = apply(op, LaurentPoly.one()).evaluate(1) * f.evaluate(1)
    return lhs == rhs
