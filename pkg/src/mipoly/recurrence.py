"""Constant-coefficient recurrence relations for multi-indexed polynomials.

For a seed polynomial Y != 0, set

    X(eta) = integral_0^eta Xi_D(y) Y(y) dy,     L := deg X = ell(D) + deg Y + 1.

Multiplication by X then closes on the multi-indexed family:

    X P_{D,n} = sum_{k=-L}^{L} r_{n,k} P_{D,n+k}

with coefficients r_{n,k} that do not depend on eta.  Two of the three
independent routes to the r_{n,k} live here:

* the *direct* route expands X P_{D,n} in the basis {P_{D,m}} by leading
  coefficient elimination (``recurrence_direct``).  A nonzero residue
  after eliminating down to degree ell signals that the input was not in
  the span and raises :class:`NonzeroRemainder`;

* the *operator* route conjugates back to the classical family:
  Theta = Bhat o X o Fhat has polynomial coefficients exactly when X is
  admissible (otherwise :class:`~mipoly.gauged.NotPolynomial` -- this is
  the negative test), Theta P_n = sum_k r0_{n,k} P_{n+k} is read off in
  the classical basis, and r_{n,k} = r0_{n,k} / pi_D(n+k)
  (``recurrence_via_theta``).

The third route (matrices of shift operators) is in
:mod:`mipoly.shiftalg` and consumes the Theta built here.

Membership of a polynomial in span{P_{D,n}} is decidable without any
expansion: q belongs to the span iff

    Xi | Xi' (2 c_2 q' + c_1[shifted - delta] q) - Xi'' c_2 q

(``in_deformed_span``).  For parameter points where leading coefficients
degenerate the elimination ladder is unusable; ``span_solve_deformed``
solves the expansion as an exact linear system instead, skipping
identically-zero basis members.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from .diffop import DiffOp, backward_op, forward_op
from .exact import (
    ParamPoint,
    Poly,
    differentiate,
    integrate_from_zero,
    poly_divmod,
)
from .families import (
    GenericityViolation,
    classical_poly,
    delta_shift,
    expand_in_classical,
    schrodinger_c1,
    schrodinger_c2,
    shifted_params,
)
from .gauged import NotPolynomial
from .mindexed import IndexSet, mi_poly, pi_factor, xi_poly


class NonzeroRemainder(ValueError):
    """An expansion in the deformed basis left a nonzero residue."""


def x_from_y(pp: ParamPoint, D: IndexSet, Y: Poly) -> Poly:
    """X = integral from 0 of Xi_D * Y; the recurrence has order deg X."""
    if Y.is_zero():
        raise ValueError("the seed polynomial Y must be nonzero")
    return integrate_from_zero(xi_poly(pp, D) * Y)


def recurrence_order(D: IndexSet, Y: Poly) -> int:
    """L = ell(D) + deg Y + 1: the recurrence runs over |k| <= L."""
    if Y.is_zero():
        raise ValueError("the seed polynomial Y must be nonzero")
    return D.ell + Y.degree + 1


def in_deformed_span(pp: ParamPoint, D: IndexSet, q: Poly) -> bool:
    """Whether q lies in span{P_{D,n} : n >= 0}."""
    xi = xi_poly(pp, D)
    dxi = differentiate(xi)
    ddxi = differentiate(dxi)
    c2 = schrodinger_c2(pp)
    lam = shifted_params(pp, D.s1, D.s2)
    c10 = schrodinger_c1(delta_shift(lam, -1))
    T = dxi * (2 * c2 * differentiate(q) + c10 * q) - ddxi * c2 * q
    _, rem = poly_divmod(T, xi)
    return rem.is_zero()


def theta_from_x(pp: ParamPoint, D: IndexSet, X: Poly) -> DiffOp:
    """Theta = Bhat o X o Fhat, demanding polynomial coefficients."""
    op = backward_op(pp, D).compose(forward_op(pp, D).left_mul(X))
    for i, c in enumerate(op.coeffs):
        if not c.is_polynomial():
            raise NotPolynomial(
                f"coefficient of d^{i} has denominator {c.den!r}; "
                f"X is not admissible for {D.label()}")
    return op


def theta_op(pp: ParamPoint, D: IndexSet, Y: Poly) -> DiffOp:
    """Theta for the admissible X built from the seed polynomial Y."""
    return theta_from_x(pp, D, x_from_y(pp, D, Y))


def expand_in_deformed(pp: ParamPoint, D: IndexSet, q: Poly) -> Dict[int, Fraction]:
    """Coefficients of q in {P_{D,m}}, by descending leading elimination."""
    out: Dict[int, Fraction] = {}
    rem = q
    while not rem.is_zero() and rem.degree >= D.ell:
        m = rem.degree - D.ell
        basis = mi_poly(pp, D, m)
        coeff = rem.lc() / basis.lc()
        out[m] = coeff
        rem = rem - coeff * basis
        assert rem.is_zero() or rem.degree < D.ell + m
    if not rem.is_zero():
        raise NonzeroRemainder(
            f"residue of degree {rem.degree} below ell = {D.ell} "
            f"for {D.label()}")
    return out


def span_solve_deformed(pp: ParamPoint, D: IndexSet, q: Poly,
                        mmax: int) -> Dict[int, Fraction]:
    """Solve q = sum a_m P_{D,m} exactly (degenerate-parameter safe)."""
    indices: List[int] = []
    cols: List[Poly] = []
    for m in range(mmax + 1):
        p = mi_poly(pp, D, m, check_leading=False)
        if not p.is_zero():
            indices.append(m)
            cols.append(p)
    nrows = max([q.degree + 1] + [p.degree + 1 for p in cols]
                ) if (cols or not q.is_zero()) else 1
    A = [[p.coeff(i) for p in cols] for i in range(nrows)]
    b = [q.coeff(i) for i in range(nrows)]
    sol = _solve_exact(A, b)
    if sol is None:
        raise NonzeroRemainder(
            f"no expansion of the given polynomial in the first "
            f"{mmax + 1} deformed basis members for {D.label()}")
    return {indices[j]: sol[j] for j in range(len(indices)) if sol[j] != 0}


def _solve_exact(A: List[List[Fraction]], b: List[Fraction]):
    """Gaussian elimination over Q; None if inconsistent, 0 for free vars."""
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if M[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = M[i][ncols]
    return sol


def recurrence_direct(pp: ParamPoint, D: IndexSet, Y: Poly,
                      n: int) -> Dict[int, Fraction]:
    """r_{n,k} by expanding X P_{D,n} in the deformed basis."""
    X = x_from_y(pp, D, Y)
    expansion = expand_in_deformed(pp, D, X * mi_poly(pp, D, n))
    return {m - n: c for m, c in expansion.items()}


def recurrence_via_theta(pp: ParamPoint, D: IndexSet, Y: Poly,
                         n: int) -> Dict[int, Fraction]:
    """r_{n,k} = r0_{n,k} / pi_D(n+k) from the conjugated operator."""
    theta = theta_op(pp, D, Y)
    return recurrence_from_theta(pp, D, theta, n)


def recurrence_from_theta(pp: ParamPoint, D: IndexSet, theta: DiffOp,
                          n: int) -> Dict[int, Fraction]:
    """Decode r_{n,k} from an already-built Theta."""
    image = theta.apply(classical_poly(pp, n)).as_poly()
    r0 = expand_in_classical(pp, image)
    out: Dict[int, Fraction] = {}
    for m, c in r0.items():
        pi = pi_factor(pp, D, m)
        if pi == 0:
            raise GenericityViolation(
                f"pi_D({m}) = 0; cannot divide the operator route "
                f"for {D.label()}")
        if c != 0:
            out[m - n] = c / pi
    return out
