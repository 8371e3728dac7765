"""Differential operators: forward/backward maps and the deformed Hamiltonian.

:class:`DiffOp` is an ordinary differential operator sum_i c_i(eta) d^i
with rational-function coefficients, supporting application to
polynomials/rational functions, composition (Leibniz), sums, and left
multiplication by functions.

The two Wronskian-built operators intertwine the classical family P_n
with the multi-indexed family P_{D,n}:

* ``forward_op``  Fhat:  Fhat P_n = P_{D,n}.  Its coefficients come from
  expanding W[mu_1, ..., mu_M, *] along the last column -- the i-th
  coefficient is the (M+i)-signed minor over derivative rows {0..M}
  minus {i} -- times the same compensating gauge that makes P_{D,n} a
  polynomial.  The coefficients are guaranteed polynomials; a leftover
  denominator raises :class:`~mipoly.gauged.NotPolynomial`.

* ``backward_op`` Bhat:  Bhat P_{D,n} = pi_D(n) P_n, built the same way
  from the dual seeds m_j with the prefactor rho_B carrying 1/Xi^M.  Its
  coefficients are rational with denominators dividing Xi_D^M; anything
  else raises :class:`DenominatorEscape`.

``htilde_op`` is the gauged Hamiltonian with H P_{D,n} = E_n P_{D,n}:

    -1/4 H = c_2 d^2 + (c_1[shifted] - 2 c_2 Xi'/Xi) d
             + c_2 Xi''/Xi - c_1[shifted - delta] Xi'/Xi

with c_1 evaluated at lambda^{[s1, s2]}.  ``single_step_forward`` /
``single_step_backward`` are the first-order ladder operators shifting
lambda by delta, with eigenvalue factors f_n, b_n such that
f_n b_{n-1} = E_n, and B o F = H exactly as operators.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .exact import ParamPoint, Poly, RatFunc, poly_divmod
from .families import (
    c_factor,
    delta_shift,
    schrodinger_c1,
    schrodinger_c2,
    shifted_params,
)
from .gauged import GaugedFn, wronskian_rows
from .mindexed import IndexSet, mj_function, seed_functions, xi_poly


class DenominatorEscape(ValueError):
    """A backward-operator denominator is not a divisor of Xi^M."""


CoeffLike = Union[RatFunc, Poly, int, str, Fraction]


def _rf(x: CoeffLike) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    return RatFunc(Poly.const(x))


class DiffOp:
    """sum_i coeffs[i] * d^i/deta^i with RatFunc coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[CoeffLike] = ()):
        cs = [_rf(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def identity() -> "DiffOp":
        return DiffOp([1])

    @staticmethod
    def derivative(order: int = 1) -> "DiffOp":
        return DiffOp([0] * order + [1])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RatFunc:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RatFunc(Poly.zero())

    def apply(self, q: Union[Poly, RatFunc]) -> RatFunc:
        f = _rf(q)
        total = RatFunc(Poly.zero())
        for c in self.coeffs:
            if not c.is_zero():
                total = total + c * f
            f = f.deriv()
        return total

    def __add__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "DiffOp":
        return DiffOp([-c for c in self.coeffs])

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def left_mul(self, f: CoeffLike) -> "DiffOp":
        """The operator q |-> f * (self q)."""
        g = _rf(f)
        return DiffOp([g * c for c in self.coeffs])

    def compose(self, other: "DiffOp") -> "DiffOp":
        """self o other: (self.compose(other))(q) = self(other(q))."""
        out = [RatFunc(Poly.zero())] * (self.order + other.order + 1) \
            if self.coeffs and other.coeffs else []
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            for j, dj in enumerate(other.coeffs):
                if dj.is_zero():
                    continue
                derivs = [dj]
                for _ in range(i):
                    derivs.append(derivs[-1].deriv())
                for r in range(i + 1):
                    out[r + j] = out[r + j] + ci * math.comb(i, r) * derivs[i - r]
        return DiffOp(out)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.coeffs)

    def poly_coeffs(self) -> Tuple[Poly, ...]:
        return tuple(c.as_poly() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("DiffOp", self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "DiffOp(0)"
        bits = [f"({c!r}) d^{i}" for i, c in enumerate(self.coeffs)
                if not c.is_zero()]
        return "DiffOp[" + " + ".join(bits) + "]"


def _expansion_coeffs(columns, rho: GaugedFn, M: int):
    """Signed last-column cofactors of an (M+1)-row Wronskian, times rho."""
    out = []
    for i in range(M + 1):
        orders = [k for k in range(M + 1) if k != i]
        minor = wronskian_rows(columns, orders)
        signed = minor * ((-1) ** (M + i))
        out.append(signed * rho)
    return out


def _p_gauge(pp: ParamPoint, D: IndexSet) -> GaugedFn:
    s1, s2 = D.s1, D.s2
    half = Fraction(1, 2)
    if pp.family == "L":
        return GaugedFn(a=-s1, b=(s1 + pp.g + half) * s2)
    return GaugedFn(c=(s1 + pp.g + half) * s2, d=(s2 + pp.h + half) * s1)


@functools.lru_cache(maxsize=None)
def forward_op(pp: ParamPoint, D: IndexSet) -> DiffOp:
    """Fhat with Fhat P_n = P_{D,n}; polynomial coefficients."""
    M = D.size
    if M == 0:
        return DiffOp.identity()
    seeds = seed_functions(pp, D)
    gauged = _expansion_coeffs(seeds, _p_gauge(pp, D), M)
    coeffs = []
    for term in gauged:
        r = term.as_ratfunc()  # NotPolynomial if the gauge fails to cancel
        coeffs.append(r.as_poly())
    return DiffOp(coeffs)


def _rho_backward(pp: ParamPoint, D: IndexSet) -> GaugedFn:
    s, s1, s2 = D.size, D.s1, D.s2
    half = Fraction(1, 2)
    xi = xi_poly(pp, D)
    const = c_factor(pp) ** (2 * s) * (-1) ** (s * (s + 1) // 2)
    r = RatFunc(Poly.const(const), xi ** s)
    if pp.family == "L":
        return GaugedFn(a=-s2, b=s1 * (s1 + pp.g + half), r=r)
    return GaugedFn(c=s1 * (s1 + pp.g + half),
                    d=s2 * (s2 + pp.h + half), r=r)


@functools.lru_cache(maxsize=None)
def backward_op(pp: ParamPoint, D: IndexSet) -> DiffOp:
    """Bhat with Bhat P_{D,n} = pi_D(n) P_n; denominators divide Xi^M."""
    M = D.size
    if M == 0:
        return DiffOp.identity()
    mjs = [mj_function(pp, D, j) for j in range(M)]
    gauged = _expansion_coeffs(mjs, _rho_backward(pp, D), M)
    xi_m = xi_poly(pp, D) ** M
    coeffs = []
    for term in gauged:
        r = term.as_ratfunc()
        _, rem = poly_divmod(xi_m, r.den)
        if not rem.is_zero():
            raise DenominatorEscape(
                f"denominator {r.den!r} does not divide Xi^{M} "
                f"for {D.label()}")
        coeffs.append(r)
    return DiffOp(coeffs)


def backward_apply_via_wronskian(pp: ParamPoint, D: IndexSet,
                                 q: Poly) -> RatFunc:
    """rho_B * W[m_1, ..., m_M, q]: the unexpanded form of Bhat q."""
    M = D.size
    if M == 0:
        return RatFunc(q)
    cols = [mj_function(pp, D, j) for j in range(M)] + [GaugedFn(r=q)]
    w = wronskian_rows(cols, list(range(M + 1)))
    return (w * _rho_backward(pp, D)).as_ratfunc()


@functools.lru_cache(maxsize=None)
def htilde_op(pp: ParamPoint, D: IndexSet) -> DiffOp:
    """The gauged Hamiltonian: htilde_op P_{D,n} = E_n P_{D,n}."""
    xi = RatFunc(xi_poly(pp, D))
    dxi = xi.deriv()
    ddxi = dxi.deriv()
    c2 = RatFunc(schrodinger_c2(pp))
    lam = shifted_params(pp, D.s1, D.s2)
    c11 = RatFunc(schrodinger_c1(lam))
    c10 = RatFunc(schrodinger_c1(delta_shift(lam, -1)))
    quarter = DiffOp([
        c2 * ddxi / xi - c10 * dxi / xi,
        c11 - 2 * c2 * dxi / xi,
        c2,
    ])
    return quarter.left_mul(-4)


def single_step_forward(pp: ParamPoint, D: IndexSet) -> DiffOp:
    """F_D(lambda): maps P_{D,n}(lambda) to f_n P_{D,n-1}(lambda+delta)."""
    xi = RatFunc(xi_poly(pp, D))
    xi_up = RatFunc(xi_poly(delta_shift(pp), D))
    cF = c_factor(pp)
    return DiffOp([-(xi_up.deriv() / xi) * cF, (xi_up / xi) * cF])


def single_step_backward(pp: ParamPoint, D: IndexSet) -> DiffOp:
    """B_D(lambda): maps P_{D,n-1}(lambda+delta) to b_{n-1} P_{D,n}(lambda)."""
    xi = RatFunc(xi_poly(pp, D))
    xi_up = RatFunc(xi_poly(delta_shift(pp), D))
    c2 = RatFunc(schrodinger_c2(pp))
    c1s = RatFunc(schrodinger_c1(shifted_params(pp, D.s1, D.s2)))
    pref = (xi / xi_up) * c2 * Fraction(-4, 1) / c_factor(pp)
    return DiffOp([pref * (c1s / c2 - xi.deriv() / xi), pref])


def forward_step_eigen(pp: ParamPoint, n: int) -> Fraction:
    """f_n in F_D P_{D,n} = f_n P_{D,n-1}(lambda+delta)."""
    if pp.family == "L":
        return Fraction(-2)
    if pp.family == "J":
        return -2 * (n + pp.g + pp.h)
    raise ValueError("ladder factors are defined for Laguerre/Jacobi only")


def backward_step_eigen(pp: ParamPoint, n: int) -> Fraction:
    """b_n in B_D P_{D,n}(lambda+delta) = b_n P_{D,n+1}(lambda)."""
    if pp.family in ("L", "J"):
        return Fraction(-2 * (n + 1))
    raise ValueError("ladder factors are defined for Laguerre/Jacobi only")
