"""Constant-term maps, the parameter-shifted homomorphism, the transfer maps
between the scalar and the 2x2 pictures, and the reconstruction recurrence.

The constant term of a coefficient is its value at z = infinity, and theta
maps to the spectral variable xi; the shifted homomorphism substitutes
xi -> xi - rho(k) afterwards.  An operator commuting with the 2x2 lift of
the Cherednik operator is recovered from its constant term order by order
in powers of 1/z.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IncompatibleConstantTerm, NonDivisible, PoleAtInfinity
from .laurent import VAR_XI, LaurentPoly, Multiplicity, exact_divide, rat
from .operators import DROp, MatOp, compose, mat_compose, poly_in_op
from .ratfunc import RatFunc
from .shifts import cherednik


# -- transfer maps -------------------------------------------------------------


def gamma_vec(f: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """f -> (f, s(f)), the invariant-vector realization."""
    return f, f.reflect()


def gamma_star(op: DROp) -> MatOp:
    """diag(op, s.op.s) acting on invariant vectors."""
    s = DROp.reflection()
    return MatOp.diagonal(op, compose(s, compose(op, s)))


def beta_ns(op: MatOp) -> MatOp:
    """Eliminate reflection parts: the s-part of entry (i, j) moves, as a
    plain differential operator, to entry (i, 1-j)."""
    rows = []
    for i in range(2):
        new = [dict(), dict()]
        for j in range(2):
            for (p, jj), c in op.entries[i][j].terms.items():
                tgt = j if jj == 0 else 1 - j
                key = (p, 0)
                s = new[tgt].get(key, RatFunc(0)) + c
                if s.is_zero():
                    new[tgt].pop(key, None)
                else:
                    new[tgt][key] = s
        rows.append((DROp(new[0]), DROp(new[1])))
    return MatOp(tuple(rows))


def d_tilde(k: Multiplicity) -> MatOp:
    """The 2x2 differential lift of the Cherednik operator."""
    return beta_ns(gamma_star(cherednik(k)))


def lift_poly_of_cherednik(p: LaurentPoly, k: Multiplicity) -> MatOp:
    """beta_ns(gamma_star(p(D_k)))."""
    return beta_ns(gamma_star(poly_in_op(p, cherednik(k))))


# -- constant term and the shifted homomorphism ---------------------------------


def constant_term_scalar(op: DROp) -> LaurentPoly:
    """Constant term of a differential operator: coefficients evaluated at
    infinity, theta -> xi."""
    out: dict[int, Fraction] = {}
    for (i, j), c in op.terms.items():
        if j:
            raise ValueError("constant term is defined for differential operators")
        v = c.value_at_infinity()
        if v:
            out[i] = out.get(i, Fraction(0)) + v
    return LaurentPoly(VAR_XI, out)


def constant_term(op: MatOp):
    """Entrywise constant term of a 2x2 differential operator."""
    if isinstance(op, DROp):
        return constant_term_scalar(op)
    return tuple(
        tuple(constant_term_scalar(e) for e in row) for row in op.entries
    )


def hc_map(op, k: Multiplicity):
    """Constant term followed by the substitution xi -> xi - rho(k)."""
    ct = constant_term(op)
    if isinstance(ct, LaurentPoly):
        return ct.substitute_linear(1, -k.rho)
    return tuple(tuple(e.substitute_linear(1, -k.rho) for e in row) for row in ct)


def reflect_spectral(p: LaurentPoly) -> LaurentPoly:
    """s(p)(xi) = p(-xi)."""
    return p.substitute_linear(-1, 0)


def hc_of_poly_image(p: LaurentPoly, k: Multiplicity):
    """Closed form of the shifted homomorphism on the lift of p(D_k):
    upper triangular with diagonal (p, s(p)) and corner rho*(s(p)-p)/xi."""
    sp = reflect_spectral(p)
    xi = LaurentPoly.monomial(1, var=VAR_XI)
    corner = exact_divide(sp - p, xi) * k.rho
    zero = LaurentPoly.zero(VAR_XI)
    return ((p, corner), (zero, sp))


# -- eigenvalue map -------------------------------------------------------------


def eigenvalue_map(p: LaurentPoly, k: Multiplicity, n) -> tuple[Fraction, Fraction]:
    """diag(p(-N - rho), p(N + 1 + rho)) at spectral parameter N."""
    n = rat(n)
    return p.evaluate(-n - k.rho), p.evaluate(n + 1 + k.rho)


def eigenvalue_map_conjugation_invariant(
    p: LaurentPoly, k: Multiplicity, lam
) -> bool:
    """Invariance of the eigenvalue map, centered at lambda + 1/2: conjugating
    by the swap and substituting lambda -> -lambda - 1 - 2 rho is neutral."""
    lam = rat(lam)
    direct = eigenvalue_map(p, k, lam)
    mirrored = eigenvalue_map(p, k, -lam - 1 - 2 * k.rho)
    return (mirrored[1], mirrored[0]) == direct


# -- series expansion and reconstruction ----------------------------------------


@dataclass(frozen=True)
class SeriesOp:
    """Truncated expansion sum_n z^-n P_n(theta) of a 2x2 operator."""

    order: int
    data: tuple  # data[n] is a 2x2 tuple of xi-polynomials

    def entry(self, n: int, i: int, j: int) -> LaurentPoly:
        return self.data[n][i][j]


def series_of_matop(op: MatOp, order: int) -> SeriesOp:
    """Expand every coefficient in powers of 1/z; PoleAtInfinity when a
    coefficient grows at infinity."""
    table = []
    for n in range(order + 1):
        table.append([[dict(), dict()], [dict(), dict()]])
    for i in range(2):
        for j in range(2):
            for (p, jj), c in op.entries[i][j].terms.items():
                if jj:
                    raise ValueError("series expansion needs differential entries")
                coeffs = c.series_at_infinity(order)
                for n in range(order + 1):
                    if coeffs[n]:
                        d = table[n][i][j]
                        d[p] = d.get(p, Fraction(0)) + coeffs[n]
    data = tuple(
        tuple(
            tuple(LaurentPoly(VAR_XI, table[n][i][j]) for j in range(2))
            for i in range(2)
        )
        for n in range(order + 1)
    )
    return SeriesOp(order, data)


def reconstruct(ct, k: Multiplicity, order: int) -> SeriesOp:
    """Rebuild the expansion of a commutant element from its constant term.

    ct is the 2x2 constant term (no rho shift).  The order-n coefficients
    solve the commutation relations against the lift of the Cherednik
    operator; failure of a required exact division or of the order-0
    compatibility conditions raises IncompatibleConstantTerm.
    """
    ct = tuple(tuple(e for e in row) for row in ct)
    rho2 = 2 * k.rho
    if not ct[1][0].is_zero():
        raise IncompatibleConstantTerm("lower-left constant term must vanish")
    xi = LaurentPoly.monomial(1, var=VAR_XI)
    lin0 = 2 * xi + rho2
    if lin0 * ct[0][1] != (ct[1][1] - ct[0][0]) * rho2:
        raise IncompatibleConstantTerm("upper-right entry incompatible with diagonal")
    q = series_of_matop(d_tilde(k), order)
    p_data = [ct]
    for n in range(1, order + 1):
        sig = _sigma(p_data, q, n)
        lin = 2 * xi + (rho2 - n)
        try:
            p21 = exact_divide(-sig[1][0], lin)
        except NonDivisible:
            raise IncompatibleConstantTerm(f"no exact solution at order {n}") from None
        p11 = (sig[0][0] + rho2 * p21) * Fraction(-1, n)
        p22 = (sig[1][1] - rho2 * p21) * Fraction(1, n)
        try:
            p12 = exact_divide(sig[0][1] - rho2 * (p11 - p22), lin)
        except NonDivisible:
            raise IncompatibleConstantTerm(f"no exact solution at order {n}") from None
        p_data.append(((p11, p12), (p21, p22)))
    return SeriesOp(order, tuple(p_data))


def _sigma(p_data, q: SeriesOp, n: int):
    """Known part of the order-n commutation relation."""
    zero = LaurentPoly.zero(VAR_XI)
    out = [[zero, zero], [zero, zero]]
    for m in range(1, n + 1):
        for i in range(2):
            for j in range(2):
                acc = out[i][j]
                for l in range(2):
                    pl = p_data[n - m][i][l]
                    ql = q.entry(m, l, j)
                    if not (pl.is_zero() or ql.is_zero()):
                        acc = acc + pl.substitute_linear(1, -m) * ql
                    qr = q.entry(m, i, l)
                    pr = p_data[n - m][l][j]
                    if not (qr.is_zero() or pr.is_zero()):
                        acc = acc - qr.substitute_linear(1, -(n - m)) * pr
                out[i][j] = acc
    return tuple(tuple(row) for row in out)


def series_equal(a: SeriesOp, b: SeriesOp) -> bool:
    n = min(a.order, b.order)
    return all(
        a.entry(m, i, j) == b.entry(m, i, j)
        for m in range(n + 1)
        for i in range(2)
        for j in range(2)
    )
