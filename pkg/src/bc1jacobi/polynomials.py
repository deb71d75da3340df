"""Construction of the orthogonal polynomial families.

The Laurent family E(n, k) is built by a triangular eigenvalue solve for the
Cherednik operator on the monomial flag 1 < z < 1/z < z^2 < 1/z^2 < ...; the
Gram-Schmidt construction against the exact pairing is kept as a cross-check
and as a fallback when the spectrum degenerates.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateSpectrum, DomainError, PochhammerZero
from .laurent import VAR_X, LaurentPoly, Multiplicity, rat, steinberg_split
from .operators import apply
from .pairings import pair_scalar, pairing_for


# -- spectral labels ---------------------------------------------------------


def lam_tilde(n: int, k: Multiplicity) -> Fraction:
    """Eigenvalue of the Cherednik operator on E(n, k)."""
    return n + k.rho if n > 0 else n - k.rho


def flag_position(n: int) -> int:
    """Position of z^n in the flag 1, z, 1/z, z^2, 1/z^2, ..."""
    return 2 * n - 1 if n > 0 else -2 * n


def flag_exponent(pos: int) -> int:
    """Inverse of flag_position."""
    return (pos + 1) // 2 if pos % 2 else -(pos // 2)


def weyl_word(n: int) -> str:
    """The element w^lambda w_{lambda*}: identity for n > 0, s for n <= 0."""
    return "1" if n > 0 else "s"


def pochhammer(a, m: int) -> Fraction:
    """Rising factorial (a)_m."""
    a = rat(a)
    out = Fraction(1)
    for j in range(m):
        out *= a + j
    return out


# -- non-symmetric family ----------------------------------------------------

_E_CACHE: dict[tuple[int, Fraction, Fraction], LaurentPoly] = {}


def nonsym_jacobi(n: int, k: Multiplicity) -> LaurentPoly:
    """Monic eigenfunction of the Cherednik operator with leading term z^n.

    >>> nonsym_jacobi(1, Multiplicity(2, 1))
    1*z + 2/5
    """
    key = (n, k.k1, k.k2)
    cached = _E_CACHE.get(key)
    if cached is not None:
        return cached
    poly = _eigen_solve(n, k)
    if poly is None:
        poly = nonsym_jacobi_gram_schmidt(n, k)
    _E_CACHE[key] = poly
    return poly


def _eigen_solve(n: int, k: Multiplicity):
    """Triangular solve on the flag; None on an eigenvalue collision."""
    from .shifts import cherednik

    top = flag_position(n)
    lam = lam_tilde(n, k)
    for pos in range(top):
        if lam_tilde(flag_exponent(pos), k) == lam:
            return None
    op = cherednik(k)
    # column images of the flag monomials under the operator
    monos = [LaurentPoly.monomial(flag_exponent(p)) for p in range(top + 1)]
    images = [apply(op, m) for m in monos]
    coeffs: dict[int, Fraction] = {flag_exponent(top): Fraction(1)}
    total = images[top]
    for pos in range(top - 1, -1, -1):
        e = flag_exponent(pos)
        # (lam - diag) c_e = coefficient of z^e contributed by higher terms
        c = total.coeff(e) / (lam - lam_tilde(e, k))
        if c:
            coeffs[e] = c
            total = total + c * images[pos]
    return LaurentPoly("z", coeffs)


def nonsym_jacobi_gram_schmidt(n: int, k: Multiplicity) -> LaurentPoly:
    """Gram-Schmidt on the flag with respect to the exact pairing."""
    if not (k.k1 >= 0 and k.k2 >= 0):
        raise DegenerateSpectrum(
            f"eigenvalue collision at n={n} and no positive pairing for k={k}"
        )
    kind = pairing_for(k)
    top = flag_position(n)
    basis: list[LaurentPoly] = []
    for pos in range(top + 1):
        f = LaurentPoly.monomial(flag_exponent(pos))
        for b in basis:
            bb = pair_scalar(b, b, kind)
            if bb == 0:
                raise DegenerateSpectrum("degenerate Gram matrix")
            f = f - (pair_scalar(b, f, kind) / bb) * b
        basis.append(f)
    return basis[top]


# -- symmetric family --------------------------------------------------------


def sym_jacobi(n: int, k: Multiplicity) -> LaurentPoly:
    """Symmetric family member, monic in (z + 1/z): leading x-coefficient 2^n.

    Built from the terminating hypergeometric sum for the classical family,
    rescaled to the monic normalization.
    """
    if n < 0:
        raise DomainError("nonnegative degree expected")
    a, b = k.alpha, k.beta
    denom = pochhammer(n + a + b + 1, n)
    if denom == 0:
        raise PochhammerZero(f"degenerate normalization at n={n}, k={k}")
    # classical value: sum_j (-n)_j (n+a+b+1)_j (a+j+1)_{n-j} / (n! j!) ((1-x)/2)^j
    x = LaurentPoly.monomial(1, var=VAR_X)
    half_one_minus_x = (LaurentPoly.one(VAR_X) - x) * Fraction(1, 2)
    classical = LaurentPoly.zero(VAR_X)
    nfact = pochhammer(1, n)
    for j in range(n + 1):
        c = (
            pochhammer(-n, j)
            * pochhammer(n + a + b + 1, j)
            * pochhammer(a + j + 1, n - j)
            / (nfact * pochhammer(1, j))
        )
        if c:
            classical = classical + c * half_one_minus_x ** j
    scale = Fraction(2) ** (2 * n) * nfact / denom
    return classical * scale


def upsilon(f: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """The vector realization (f1, f2) of f = f1 + f2 z."""
    return steinberg_split(f)


# -- matrix families ---------------------------------------------------------


def corner_constant(n: int, k: Multiplicity) -> Fraction:
    """c_N(k) = k1 / (1 + 2N + k1 + 2k2)."""
    d = 1 + 2 * n + k.k1 + 2 * k.k2
    if d == 0:
        raise DomainError(f"corner constant undefined at N={n}, k={k}")
    return k.k1 / d


def mat_families(N: int, k: Multiplicity):
    """The diagonal and column families with their connecting matrix.

    Returns (nfam, mfam, C) where nfam is diag of the symmetric family at
    k+(1,0) and k+(-1,1), mfam has columns given by the vector realizations
    of E(-N, k) and E(N+1, k), and mfam = U^-1 nfam U C holds exactly with
    C = (1 c_N; 0 1).
    """
    if N < 0:
        raise DomainError("N must be nonnegative")
    zero = LaurentPoly.zero(VAR_X)
    nfam = (
        (sym_jacobi(N, k.plus), zero),
        (zero, sym_jacobi(N, k.minus)),
    )
    col0 = upsilon(nonsym_jacobi(-N, k))
    col1 = upsilon(nonsym_jacobi(N + 1, k))
    mfam = ((col0[0], col1[0]), (col0[1], col1[1]))
    c = corner_constant(N, k)
    C = ((Fraction(1), c), (Fraction(0), Fraction(1)))
    if _conj_times_c(nfam, C) != mfam:
        raise AssertionError(f"matrix family relation failed at N={N}, k={k}")
    return nfam, mfam, C


def _conj_times_c(nfam, C):
    """U^-1 diag(a, d) U C, carried out without radicals."""
    a, d = nfam[0][0], nfam[1][1]
    half = Fraction(1, 2)
    conj = (
        ((a + d) * half, (d - a) * half),
        ((d - a) * half, (a + d) * half),
    )
    return (
        (
            conj[0][0] * C[0][0] + conj[0][1] * C[1][0],
            conj[0][0] * C[0][1] + conj[0][1] * C[1][1],
        ),
        (
            conj[1][0] * C[0][0] + conj[1][1] * C[1][0],
            conj[1][0] * C[0][1] + conj[1][1] * C[1][1],
        ),
    )


def matpoly_mul_const(m, h):
    """Right-multiply a 2x2 x-polynomial matrix by a 2x2 rational matrix."""
    return tuple(
        tuple(
            m[i][0] * rat(h[0][j]) + m[i][1] * rat(h[1][j]) for j in range(2)
        )
        for i in range(2)
    )
