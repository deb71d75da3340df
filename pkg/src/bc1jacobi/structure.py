"""Constructive decompositions behind the structure theorems.

Every shift operator factors as (composite of fundamentals) x (polynomial in
the base operator of its realization); the factorization is found by the
leading-coefficient elimination the existence proofs use, alternating the
parity steps for the matrix realizations.  A commutant element of the
diagonal second-order operator decomposes over the four words
(I, S', base, S'.base) times powers of the second-order operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAShiftOperator, NotInCommutant, NotTransmuting
from .laurent import VAR_XI, LaurentPoly, Multiplicity
from .operators import (
    DROp,
    MatOp,
    mat_compose,
    mat_op_equal,
    mat_poly_in_op,
    op_equal,
    compose,
    poly_in_op,
)
from .polynomials import corner_constant, nonsym_jacobi
from .ratfunc import RatFunc
from .shifts import Shift, as_shift, base_operator, composite_shift, frak_d, sign_matrix

_RF0 = RatFunc(0)


@dataclass(frozen=True)
class Decomposition:
    """Result of a shift-operator factorization: op = generator * p(base)."""

    ell: Shift
    poly: LaurentPoly  # in the spectral variable
    residual: object  # zero operator on success

    @property
    def succeeded(self) -> bool:
        return self.residual.is_zero()


def _is_mat(realization: str) -> bool:
    return realization in ("mat", "matU")


def _compose(a, b):
    return mat_compose(a, b) if isinstance(a, MatOp) else compose(a, b)


def _equal(a, b):
    return mat_op_equal(a, b) if isinstance(a, MatOp) else op_equal(a, b)


def _leading(op):
    """Map entry-index -> coefficient at the top theta order."""
    n = op.order()
    if isinstance(op, MatOp):
        out = {}
        for i in range(2):
            for j in range(2):
                for jj in (0, 1):
                    c = op.entries[i][j].coeff(n, jj)
                    if not c.is_zero():
                        out[(i, j, jj)] = c
        return n, out
    out = {}
    for jj in (0, 1):
        c = op.coeff(n, jj)
        if not c.is_zero():
            out[jj] = c
    return n, out


def decompose_shift(op, realization: str, ell, k: Multiplicity) -> Decomposition:
    """Factor op as composite(ell, k) followed on the right by a polynomial in
    the base operator.  Raises NotTransmuting if op fails the transmutation
    identity and NotAShiftOperator if the reduction leaves a residual."""
    ell = as_shift(ell)
    base_k = base_operator(realization, k)
    base_kl = base_operator(realization, k.shifted(ell))
    if not _equal(_compose(op, base_k), _compose(base_kl, op)):
        raise NotTransmuting(f"input does not transmute with shift {ell}")
    gen = composite_shift(realization, ell, k)
    ord0 = gen.order()
    step = 2 if realization == "sym" else 1
    powers = [_identity_like(op)]
    coeffs: dict[int, Fraction] = {}
    residual = op
    while not residual.is_zero():
        n = residual.order()
        excess = n - ord0
        if excess < 0 or excess % step:
            raise NotAShiftOperator(f"cannot reduce order {n} against {ord0}")
        deg = excess // step
        while len(powers) <= deg:
            powers.append(_compose(powers[-1], base_k))
        term = _compose(gen, powers[deg])
        c = _match_leading(residual, term)
        if c is None:
            raise NotAShiftOperator("leading coefficient mismatch")
        coeffs[deg] = c
        residual = residual - term.scale(c)
        if not residual.is_zero() and residual.order() >= n:
            raise NotAShiftOperator("order did not drop")
    poly = LaurentPoly(VAR_XI, coeffs)
    recomposed = _compose(gen, _poly_in(poly, base_k))
    if not _equal(recomposed, op):
        raise NotAShiftOperator("recomposition mismatch")
    return Decomposition(ell, poly, residual)


def _identity_like(op):
    return MatOp.identity() if isinstance(op, MatOp) else DROp.identity()


def _poly_in(p, base):
    return mat_poly_in_op(p, base) if isinstance(base, MatOp) else poly_in_op(p, base)


def _match_leading(r, t):
    """Scalar c with top(r) = c*top(t), or None."""
    nr, lr = _leading(r)
    nt, lt = _leading(t)
    if nr != nt:
        return None
    key = next(iter(lt))
    if key not in lr:
        return None
    c = (lr[key] / lt[key]).as_constant()
    if c is None:
        return None
    for kk, cc in lr.items():
        if kk not in lt or lt[kk] * c != cc:
            return None
    for kk in lt:
        if kk not in lr:
            return None
    return c


# -- the algebra of the diagonal weight ----------------------------------------


@dataclass(frozen=True)
class CommutantDecomposition:
    """op = sum over orders of the recorded two-dimensional contributions.

    even[M]  = (c, c') for  (c I + c' S') diagML^M
    odd[M]   = (c, c') for  (c I + c' S') frakD diagML^M
    """

    even: dict[int, tuple[Fraction, Fraction]]
    odd: dict[int, tuple[Fraction, Fraction]]
    residual: MatOp

    @property
    def succeeded(self) -> bool:
        return self.residual.is_zero()


def decompose_dw(op: MatOp, k: Multiplicity) -> CommutantDecomposition:
    """Express a differential operator commuting with the diagonal invariant
    operator through I, S' and the first-order generator."""
    if not op.is_differential():
        raise NotInCommutant("input carries reflection terms")
    fd = frak_d(k)
    dml = MatOp.diagonal(
        base_operator("sym", k.plus), base_operator("sym", k.minus)
    )
    if not mat_op_equal(mat_compose(op, dml), mat_compose(dml, op)):
        raise NotInCommutant("input does not commute with the invariant operator")
    sprime = sign_matrix()
    even: dict[int, tuple[Fraction, Fraction]] = {}
    odd: dict[int, tuple[Fraction, Fraction]] = {}
    dml_powers = [MatOp.identity()]
    residual = op
    while not residual.is_zero():
        n = residual.order()
        m, parity = divmod(n, 2)
        while len(dml_powers) <= m:
            dml_powers.append(mat_compose(dml_powers[-1], dml))
        t1 = dml_powers[m] if not parity else mat_compose(fd, dml_powers[m])
        t2 = mat_compose(sprime, t1)
        pair = _match_leading_pair(residual, t1, t2)
        if pair is None:
            raise NotInCommutant("leading terms outside the two-dimensional slice")
        c, cp = pair
        (odd if parity else even)[m] = (c, cp)
        residual = residual - t1.scale(c) - t2.scale(cp)
        if not residual.is_zero() and residual.order() >= n:
            raise NotInCommutant("order did not drop")
    recomposed = MatOp.zero()
    for m, (c, cp) in even.items():
        base = dml_powers[m]
        recomposed = recomposed + base.scale(c) + mat_compose(sprime, base).scale(cp)
    for m, (c, cp) in odd.items():
        base = mat_compose(fd, dml_powers[m])
        recomposed = recomposed + base.scale(c) + mat_compose(sprime, base).scale(cp)
    if not mat_op_equal(recomposed, op):
        raise NotInCommutant("recomposition mismatch")
    return CommutantDecomposition(even, odd, residual)


def _match_leading_pair(r, t1, t2):
    """(c, c') with top(r) = c*top(t1) + c'*top(t2), or None."""
    n = r.order()
    if t1.order() != n:
        return None
    lead_r = _top_coeffs(r, n)
    lead_1 = _top_coeffs(t1, n)
    lead_2 = _top_coeffs(t2, n)
    # two unknowns; solve on the first two independent entries
    keys = [kk for kk in set(lead_1) | set(lead_2) | set(lead_r)]
    sol = None
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            det = lead_1.get(keys[a], _RF0) * lead_2.get(keys[b], _RF0) - lead_1.get(
                keys[b], _RF0
            ) * lead_2.get(keys[a], _RF0)
            dc = det.as_constant()
            if dc:
                ra = lead_r.get(keys[a], _RF0)
                rb = lead_r.get(keys[b], _RF0)
                c = (
                    (ra * lead_2.get(keys[b], _RF0) - rb * lead_2.get(keys[a], _RF0))
                    / det
                ).as_constant()
                cp = (
                    (lead_1.get(keys[a], _RF0) * rb - lead_1.get(keys[b], _RF0) * ra)
                    / det
                ).as_constant()
                if c is None or cp is None:
                    return None
                sol = (c, cp)
                break
        if sol:
            break
    if sol is None:
        return None
    c, cp = sol
    for kk in keys:
        lhs = lead_r.get(kk, _RF0)
        rhs = lead_1.get(kk, _RF0) * c + lead_2.get(kk, _RF0) * cp
        if lhs != rhs:
            return None
    return sol


def _top_coeffs(op: MatOp, n: int):
    out = {}
    for i in range(2):
        for j in range(2):
            c = op.entries[i][j].coeff(n, 0)
            if not c.is_zero():
                out[(i, j)] = c
    return out


# -- reflection symmetry of the Laurent family ----------------------------------


def symmetry_identities(N: int, k: Multiplicity) -> bool:
    """The two exact identities expressing E(., k)(1/z) through E(., k)(z)
    with the corner constant c_N."""
    em = nonsym_jacobi(-N, k)
    ep = nonsym_jacobi(N + 1, k)
    c = corner_constant(N, k)
    first = em.reflect() == (ep - c * em).shift(-1)
    second = ep.reflect() == (c * ep + (1 - c * c) * em).shift(-1)
    return first and second
