"""Differential-reflection operators sum c_ij(z) theta^i s^j and 2x2 blocks.

theta = z d/dz is the primitive derivation, s is the reflection z -> 1/z,
and the coefficients c_ij are rational functions of z.  Composition uses

    theta . c(z) = c(z) . theta + (theta c)(z)
    s . c(z)     = c(1/z) . s,      s . theta = -theta . s,      s^2 = 1.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import LeadingFormMismatch, NonDivisible
from .laurent import VAR_X, VAR_Z, LaurentPoly, exact_divide, rat, sym_z_to_x, x_to_z
from .ratfunc import RatFunc


def _coerce_coeff(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, (LaurentPoly, int, Fraction)):
        return RatFunc._coerce(c)
    raise TypeError(f"bad coefficient {c!r}")


class DROp:
    """Finite map (theta power i >= 0, s power j in {0,1}) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[tuple[int, int], RatFunc] = {}
        for (i, j), c in (terms or {}).items():
            c = _coerce_coeff(c)
            if not c.is_zero():
                if i < 0 or j not in (0, 1):
                    raise ValueError(f"bad term index ({i},{j})")
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DROp is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> DROp:
        return cls({})

    @classmethod
    def identity(cls) -> DROp:
        return cls({(0, 0): RatFunc(1)})

    @classmethod
    def theta(cls) -> DROp:
        return cls({(1, 0): RatFunc(1)})

    @classmethod
    def reflection(cls) -> DROp:
        return cls({(0, 1): RatFunc(1)})

    @classmethod
    def mul_by(cls, c) -> DROp:
        """Multiplication operator f -> c*f."""
        return cls({(0, 0): _coerce_coeff(c)})

    # -- linear structure ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DROp.mul_by(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, RatFunc(0)) + c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return DROp(terms)

    __radd__ = __add__

    def __neg__(self):
        return DROp({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DROp.mul_by(other)
        return self + (-other)

    def scale(self, c) -> DROp:
        c = _coerce_coeff(c)
        return DROp({key: c * v for key, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Highest theta power; -1 for the zero operator."""
        return max((i for i, _ in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> RatFunc:
        return self.terms.get((i, j), RatFunc(0))

    def __eq__(self, other):
        if not isinstance(other, DROp):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __pow__(self, n: int) -> DROp:
        if n < 0:
            raise ValueError("negative operator power")
        result = DROp.identity()
        for _ in range(n):
            result = compose(result, self)
        return result

    def to_json(self) -> list:
        return [
            {"i": i, "j": j, "num": c.num.to_json(), "den": c.den.to_json()}
            for (i, j), c in sorted(self.terms.items())
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items()):
            sym = f"{c!r}"
            if i:
                sym += f" th^{i}" if i > 1 else " th"
            if j:
                sym += " s"
            bits.append(sym)
        return "  +  ".join(bits)


def compose(a: DROp, b: DROp) -> DROp:
    """Operator product a . b (b acts first)."""
    out: dict[tuple[int, int], RatFunc] = {}
    for (i, j), ca in a.terms.items():
        for (l, m), cb in b.terms.items():
            cb_j = cb.reflect() if j else cb
            sign = -1 if (j and l % 2) else 1
            # theta^i . c = sum_r C(i,r) theta^(i-r)(c) theta^r
            derivs = [cb_j]
            for _ in range(i):
                derivs.append(derivs[-1].theta())
            jm = (j + m) % 2
            for r in range(i + 1):
                coef = ca * derivs[i - r] * (comb(i, r) * sign)
                if coef.is_zero():
                    continue
                key = (r + l, jm)
                s = out.get(key, RatFunc(0)) + coef
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return DROp(out)


def apply_ratfunc(op: DROp, f: LaurentPoly) -> RatFunc:
    """Apply without requiring the result to be a Laurent polynomial."""
    if f.var != VAR_Z:
        raise ValueError("operators act on z-polynomials")
    # Accumulate num/den raw and canonicalize once at the end.
    num = LaurentPoly.zero()
    den = LaurentPoly.one()
    fr = f.reflect()
    for (i, j), c in op.terms.items():
        g = fr if j else f
        for _ in range(i):
            g = g.theta()
        num = num * c.den + c.num * g * den
        den = den * c.den
    return RatFunc(num, den)


def apply(op: DROp, f: LaurentPoly) -> LaurentPoly:
    """Apply op to f; all term actions are summed over a common denominator
    and divided exactly.  Raises NonDivisible if op does not preserve the
    Laurent ring on this input."""
    total = apply_ratfunc(op, f)
    if not total.is_polynomial():
        raise NonDivisible(f"operator does not preserve C[z^+-1] on {f!r}")
    return total.num


_PROBE_RANGE = range(-8, 9)
_PROBE_MONOMIALS = [LaurentPoly.monomial(n) for n in _PROBE_RANGE]
_SAMPLE_POINTS = (Fraction(3), Fraction(5, 2), Fraction(-7, 3), Fraction(9, 4))


def _probe_values(op: DROp, point: Fraction):
    """Values of (op z^n)(point) for n in the probe range, or None when some
    coefficient has a pole at the point."""
    plain: dict[int, Fraction] = {}
    refl: dict[int, Fraction] = {}
    for (i, j), c in op.terms.items():
        d = c.den.evaluate(point)
        if d == 0:
            return None
        v = c.num.evaluate(point) / d
        (refl if j else plain)[i] = (refl if j else plain).get(i, Fraction(0)) + v
    out = []
    for n in _PROBE_RANGE:
        zn = point ** n
        val = sum((v * n ** i for i, v in plain.items()), Fraction(0)) * zn
        val += sum((v * (-n) ** i for i, v in refl.items()), Fraction(0)) / zn
        out.append(val)
    return out


def op_equal(a: DROp, b: DROp) -> bool:
    """Coefficient-exact equality, cross-checked by an evaluator sweep that
    applies both operators to z^n, n in [-8, 8], and compares the resulting
    rational functions at fixed sample points (symbolically when every sample
    point meets a pole)."""
    symbolic = (a - b).is_zero()
    probes_agree = True
    sampled = 0
    for point in _SAMPLE_POINTS:
        va = _probe_values(a, point)
        vb = _probe_values(b, point)
        if va is None or vb is None:
            continue
        sampled += 1
        if va != vb:
            probes_agree = False
            break
        if sampled == 2:
            break
    if probes_agree and (sampled == 0 or not symbolic):
        # settle it by the full symbolic application of every probe monomial
        for f in _PROBE_MONOMIALS:
            if apply_ratfunc(a, f) != apply_ratfunc(b, f):
                probes_agree = False
                break
    if symbolic and not probes_agree:
        raise AssertionError("canonical forms equal but actions differ")
    if not symbolic and probes_agree:
        raise AssertionError("actions agree on probes but forms differ")
    return symbolic


def poly_in_op(p: LaurentPoly, op: DROp) -> DROp:
    """p(op) for an ordinary polynomial p (xi- or x-tagged coefficients)."""
    if p.terms and min(p.terms) < 0:
        raise ValueError("negative powers of an operator")
    result = DROp.zero()
    power = DROp.identity()
    for e in range(0, (p.degree() + 1) if p.terms else 0):
        c = p.coeff(e)
        if c:
            result = result + power.scale(c)
        if e + 1 <= p.degree():
            power = compose(power, op)
    return result


def order_normal_form(op: DROp, ell) -> tuple[int, Fraction]:
    """Order N and leading constant a of a shift operator with shift ell.

    The top coefficient must be a * (z^(1/2)-z^(-1/2))^(-ell1) (z-1/z)^(-ell2)
    with no reflection part at top order; otherwise LeadingFormMismatch.
    """
    e1, e2 = int(ell[0]), int(ell[1])
    if e1 % 2:
        raise ValueError("ell1 must be even")
    if op.is_zero():
        raise LeadingFormMismatch("zero operator")
    n = op.order()
    if not op.coeff(n, 1).is_zero():
        raise LeadingFormMismatch("reflection term at top order")
    shape = leading_shape(e1, e2)
    a = (op.coeff(n, 0) / shape).as_constant()
    if a is None:
        raise LeadingFormMismatch("top coefficient is not a multiple of the shape")
    if n < abs(e1) // 2 + abs(e1 // 2 + e2):
        raise LeadingFormMismatch("order below the shift bound")
    return n, a


def leading_shape(e1: int, e2: int) -> RatFunc:
    """(z^(1/2)-z^(-1/2))^(-e1) (z-1/z)^(-e2) as a rational function (e1 even)."""
    half = LaurentPoly(VAR_Z, {1: 1, 0: -2, -1: 1})  # (z^(1/2)-z^(-1/2))^2
    full = LaurentPoly(VAR_Z, {1: 1, -1: -1})
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    if e1 >= 0:
        den = den * half ** (e1 // 2)
    else:
        num = num * half ** (-e1 // 2)
    if e2 >= 0:
        den = den * full ** e2
    else:
        num = num * full ** (-e2)
    return RatFunc(num, den)


# -- 2x2 matrices of operators ------------------------------------------------


class MatOp:
    """2x2 matrix of DROp, acting on pairs or 2x2 matrices of x-polynomials."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(e for e in row) for row in entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("MatOp needs a 2x2 array")
        for row in rows:
            for e in row:
                if not isinstance(e, DROp):
                    raise TypeError("MatOp entries must be DROp")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatOp is immutable")

    @classmethod
    def zero(cls) -> MatOp:
        z = DROp.zero()
        return cls(((z, z), (z, z)))

    @classmethod
    def identity(cls) -> MatOp:
        return cls.from_scalar_matrix(((1, 0), (0, 1)))

    @classmethod
    def from_scalar_matrix(cls, m) -> MatOp:
        return cls(
            tuple(tuple(DROp.mul_by(rat(c)) for c in row) for row in m)
        )

    @classmethod
    def diagonal(cls, a: DROp, d: DROp) -> MatOp:
        z = DROp.zero()
        return cls(((a, z), (z, d)))

    def __add__(self, other):
        return MatOp(
            tuple(
                tuple(self.entries[i][j] + other.entries[i][j] for j in range(2))
                for i in range(2)
            )
        )

    def __neg__(self):
        return MatOp(tuple(tuple(-e for e in row) for row in self.entries))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> MatOp:
        return MatOp(tuple(tuple(e.scale(c) for e in row) for row in self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def order(self) -> int:
        return max(e.order() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, MatOp):
            return NotImplemented
        return self.entries == other.entries

    def __pow__(self, n: int) -> MatOp:
        if n < 0:
            raise ValueError("negative operator power")
        result = MatOp.identity()
        for _ in range(n):
            result = mat_compose(result, self)
        return result

    def is_differential(self) -> bool:
        """True when no entry carries a reflection term."""
        return all(
            j == 0 for row in self.entries for e in row for (_, j) in e.terms
        )

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]

    def __repr__(self):
        return "[[{}, {}], [{}, {}]]".format(
            *(repr(e) for row in self.entries for e in row)
        )


def mat_compose(a: MatOp, b: MatOp) -> MatOp:
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            acc = DROp.zero()
            for l in range(2):
                acc = acc + compose(a.entries[i][l], b.entries[l][j])
            row.append(acc)
        out.append(tuple(row))
    return MatOp(tuple(out))


def mat_op_equal(a: MatOp, b: MatOp) -> bool:
    return all(
        op_equal(a.entries[i][j], b.entries[i][j]) for i in range(2) for j in range(2)
    )


def mat_poly_in_op(p: LaurentPoly, op: MatOp) -> MatOp:
    result = MatOp.zero()
    power = MatOp.identity()
    if p.is_zero():
        return result
    for e in range(0, p.degree() + 1):
        c = p.coeff(e)
        if c:
            result = result + power.scale(c)
        if e + 1 <= p.degree():
            power = mat_compose(power, op)
    return result


def mat_apply_laurent_vector(op: MatOp, vec) -> tuple[LaurentPoly, LaurentPoly]:
    """Apply to a pair of z-Laurent polynomials, summing each row over a
    common denominator before the exact division."""
    out = []
    for i in range(2):
        total = apply_ratfunc(op.entries[i][0], vec[0]) + apply_ratfunc(
            op.entries[i][1], vec[1]
        )
        if not total.is_polynomial():
            raise NonDivisible("matrix operator row does not preserve C[z^+-1]")
        out.append(total.num)
    return tuple(out)


def mat_apply_vector(op: MatOp, vec) -> tuple[LaurentPoly, LaurentPoly]:
    """Apply to a pair of x-polynomials; rows must preserve C[x]."""
    vz = tuple(x_to_z(v) for v in vec)
    return tuple(sym_z_to_x(f) for f in mat_apply_laurent_vector(op, vz))


def mat_apply_matrix(op: MatOp, m):
    """Apply to a 2x2 matrix of x-polynomials, column by column."""
    c0 = mat_apply_vector(op, (m[0][0], m[1][0]))
    c1 = mat_apply_vector(op, (m[0][1], m[1][1]))
    return ((c0[0], c1[0]), (c0[1], c1[1]))


def mat_conj_u(m: MatOp) -> MatOp:
    """U^-1 m U for U = (1 -1; 1 1)/sqrt(2); the result is rational."""
    a, b = m.entries[0]
    c, d = m.entries[1]
    half = Fraction(1, 2)
    return MatOp(
        (
            ((a + b + c + d).scale(half), (-a + b - c + d).scale(half)),
            ((-a - b + c + d).scale(half), (a - b - c + d).scale(half)),
        )
    )


def mat_conj_u_inv(m: MatOp) -> MatOp:
    """U m U^-1, the inverse conjugation of mat_conj_u."""
    a, b = m.entries[0]
    c, d = m.entries[1]
    half = Fraction(1, 2)
    return MatOp(
        (
            ((a - b - c + d).scale(half), (a + b - c - d).scale(half)),
            ((a - b + c - d).scale(half), (a + b + c + d).scale(half)),
        )
    )
