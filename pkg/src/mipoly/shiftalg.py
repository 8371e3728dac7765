"""Recurrence coefficients through shift operators on the degree index.

Multiplication by eta and differentiation both act on a classical family
{P_n} purely through index shifts: the three-term recurrence writes
eta P_n over P_{n+1}, P_n, P_{n-1}, and the derivative expansion writes
P_n' over lower members.  Realizing the two actions as exact matrices on
a truncated slice of the basis turns every polynomial-coefficient
operator in (eta, d/deta) into a banded matrix whose columns are basis
expansions -- a route to the recurrence coefficients that never touches
the deformed polynomials directly.

Two bookkeeping facts drive the implementation.  First, composition of
index-shift actions reverses order under the matrix translation: if S
and T act on the family and ST means "T first", then the matrix of ST is
mat(T) @ mat(S).  Consequently an operator sum_{i,j} F_ij eta^i d^j goes
to sum_{i,j} F_ij mat(eta-action)^i mat(derivative-action)^j with the
eta-power on the left.  Second, truncation spoils the trailing columns
of anything that raises the degree, so every matrix carries a safe
window (the largest trustworthy column) and an upward bandwidth, both
propagated through sums and products; reading beyond the window raises
instead of returning silently wrong entries.

The normal-ordered shift layer at the bottom implements substitution
operators f(n) |-> f(n + g(n)) on polynomials in the index, with their
star-product composition law.  It exists to verify the shift calculus
(composition identities, collapse to evaluation, commutator cross
terms) on explicit functions, independently of any matrix truncation.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .diffop import DiffOp
from .exact import ParamPoint, Poly
from .families import GenericityViolation, cnk, recurrence_abc
from .mindexed import IndexSet, pi_factor
from .recurrence import recurrence_order, theta_op


class SafeWindowExhausted(RuntimeError):
    """A truncated operator matrix was read beyond its exact columns."""


# -- exact matrices acting on the basis by columns ---------------------------


class OpMatrix:
    """Square exact matrix acting on {P_0, ..., P_{size-1}} by columns.

    Column n holds the basis expansion of the image of P_n:
    Op P_n = sum_m entries[m][n] P_m.  `safe` is the largest column index
    unharmed by truncation, `band_up` bounds how far the operator can
    raise the degree; both are propagated through sums and products.
    """

    def __init__(self, entries, safe: int, band_up: int):
        self.entries = tuple(tuple(Fraction(x) for x in row)
                             for row in entries)
        self.size = len(self.entries)
        self.safe = min(safe, self.size - 1)
        self.band_up = band_up

    @staticmethod
    def zero(size: int) -> "OpMatrix":
        row = (Fraction(0),) * size
        return OpMatrix([row] * size, size - 1, -size)

    @staticmethod
    def identity(size: int) -> "OpMatrix":
        entries = [[Fraction(int(m == n)) for n in range(size)]
                   for m in range(size)]
        return OpMatrix(entries, size - 1, 0)

    def entry(self, m: int, n: int) -> Fraction:
        if n > self.safe:
            raise SafeWindowExhausted(
                f"column {n} is beyond the safe window (<= {self.safe})")
        return self.entries[m][n]

    def column(self, n: int) -> Tuple[Fraction, ...]:
        if n > self.safe:
            raise SafeWindowExhausted(
                f"column {n} is beyond the safe window (<= {self.safe})")
        return tuple(row[n] for row in self.entries)

    def scaled(self, c) -> "OpMatrix":
        c = Fraction(c)
        return OpMatrix([[c * x for x in row] for row in self.entries],
                        self.safe, self.band_up)

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        assert self.size == other.size
        entries = [[a + b for a, b in zip(ra, rb)]
                   for ra, rb in zip(self.entries, other.entries)]
        return OpMatrix(entries, min(self.safe, other.safe),
                        max(self.band_up, other.band_up))

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return self + other.scaled(-1)

    def __mul__(self, other: "OpMatrix") -> "OpMatrix":
        # column n of the product applies self to column n of other, so
        # self must be exact up to the highest row other can populate
        assert self.size == other.size
        size = self.size
        cols = list(zip(*other.entries))
        entries = [[sum((row[l] * col[l] for l in range(size)
                         if row[l] and col[l]), Fraction(0))
                    for col in cols] for row in self.entries]
        safe = min(other.safe, self.safe - max(other.band_up, 0))
        return OpMatrix(entries, safe, self.band_up + other.band_up)

    def agrees_with(self, other: "OpMatrix") -> bool:
        """Entrywise equality on the shared safe columns."""
        upto = min(self.safe, other.safe)
        return all(self.entries[m][n] == other.entries[m][n]
                   for n in range(upto + 1) for m in range(self.size))

    def __repr__(self) -> str:
        return (f"OpMatrix(size={self.size}, safe={self.safe}, "
                f"band_up={self.band_up})")


@functools.lru_cache(maxsize=None)
def delta_matrix(pp: ParamPoint, size: int) -> OpMatrix:
    """Matrix of eta-multiplication: tridiagonal from the recurrence."""
    entries = [[Fraction(0)] * size for _ in range(size)]
    for n in range(size):
        A, B, C = recurrence_abc(pp, n)
        if n + 1 < size:
            entries[n + 1][n] = A
        entries[n][n] = B
        if n - 1 >= 0:
            entries[n - 1][n] = C
    # the last column loses its degree-raising entry to truncation
    return OpMatrix(entries, size - 2, 1)


@functools.lru_cache(maxsize=None)
def gamma_matrix(pp: ParamPoint, size: int) -> OpMatrix:
    """Matrix of differentiation: strictly degree-lowering."""
    entries = [[Fraction(0)] * size for _ in range(size)]
    for n in range(size):
        for k in range(1, n + 1):
            entries[n - k][n] = cnk(pp, n, k)
    return OpMatrix(entries, size - 1, -1)


# -- normal-ordered shifts on polynomials in the index -----------------------

_N = Poly([0, 1])  # the index variable


@dataclass(frozen=True)
class NormalOrderedShift:
    """Substitution operator f(n) |-> f(n + g(n)) for polynomial g."""

    displacement: Poly

    def apply(self, f: Poly) -> Poly:
        return f.compose(_N + self.displacement)

    def star(self, other: "NormalOrderedShift") -> "NormalOrderedShift":
        """Composition law: self after other, again a substitution."""
        g1, g2 = self.displacement, other.displacement
        return NormalOrderedShift(g1 + g2.compose(_N + g1))


def normal_ordered_apply(s: NormalOrderedShift, f: Poly) -> Poly:
    return s.apply(f)


def star(s1: NormalOrderedShift, s2: NormalOrderedShift) -> NormalOrderedShift:
    return s1.star(s2)


def collapsing_shift(j: int) -> NormalOrderedShift:
    """Displacement -(n + j): sends any f(n) to the constant f(-j)."""
    return NormalOrderedShift(Poly([-j, -1]))


# -- commutator cross terms --------------------------------------------------


def bnk_value(pp: ParamPoint, n: int, k: int) -> Fraction:
    """Cross-term coefficient of the eta/derivative action commutator.

    The bracket of the two index actions reproduces the identity up to
    these coefficients (and one collapse term that annihilates every
    basis member); each must vanish identically.
    """
    A_n, B_n, C_n = recurrence_abc(pp, n)
    A_low = recurrence_abc(pp, n - k - 1)[0]
    B_low = recurrence_abc(pp, n - k)[1]
    C_low = recurrence_abc(pp, n - k + 1)[2]
    return (A_n * cnk(pp, n + 1, k + 1) - A_low * cnk(pp, n, k + 1)
            + (B_n - B_low) * cnk(pp, n, k)
            + C_n * cnk(pp, n - 1, k - 1) - C_low * cnk(pp, n, k - 1))


Report = List[Tuple[str, bool, str]]


def commutator_check(pp: ParamPoint, size: int, nmax: int = 20) -> Report:
    """The two faces of [derivative-action, eta-action] = identity."""
    d = delta_matrix(pp, size)
    g = gamma_matrix(pp, size)
    bracket = g * d - d * g
    ok = bracket.agrees_with(OpMatrix.identity(size))
    out = [("commutator_window", ok,
            f"columns 0..{bracket.safe} at size {size}")]
    bad = [(n, k) for n in range(1, nmax + 1) for k in range(1, n + 1)
           if bnk_value(pp, n, k) != 0]
    out.append(("cross_terms_vanish", not bad,
                f"n <= {nmax}" if not bad else f"nonzero at {bad[:5]}"))
    return out


def star_identities_check(seed: int = 0, trials: int = 10) -> Report:
    """Substitution-calculus identities on explicit polynomials."""
    import random                                  # deterministic, seeded
    rng = random.Random(seed)

    def rand_poly(deg: int) -> Poly:
        return Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                     for _ in range(deg + 1)])

    out: Report = []
    a, b = Fraction(3, 2), Fraction(-5, 3)
    ca, cb = NormalOrderedShift(Poly([a])), NormalOrderedShift(Poly([b]))
    out.append(("constants_add",
                star(ca, cb).displacement == Poly([a + b]), f"a={a}, b={b}"))
    oj = NormalOrderedShift(Poly([-b, -1]))
    out.append(("collapse_absorbs_left",
                star(ca, oj).displacement == oj.displacement,
                "constant then collapse"))
    out.append(("collapse_shifts_right",
                star(oj, ca).displacement == Poly([-(b - a), -1]),
                "collapse then constant"))
    ok = star(collapsing_shift(2), collapsing_shift(5)
              ).displacement == collapsing_shift(5).displacement
    out.append(("collapse_absorbs_collapse", ok, "j=2, k=5"))

    assoc = apply_ok = absorb = True
    for _ in range(trials):
        s1, s2, s3 = (NormalOrderedShift(rand_poly(2)) for _ in range(3))
        f = rand_poly(3)
        assoc &= (star(star(s1, s2), s3).displacement
                  == star(s1, star(s2, s3)).displacement)
        apply_ok &= star(s1, s2).apply(f) == s1.apply(s2.apply(f))
        j, k = rng.randint(1, 6), rng.randint(1, 6)
        absorb &= (star(collapsing_shift(j), collapsing_shift(k)).apply(f)
                   == collapsing_shift(k).apply(f))
    out.append(("star_associative", assoc, f"{trials} random triples"))
    out.append(("star_matches_composition", apply_ok,
                f"{trials} random pairs"))
    out.append(("collapse_action_absorbs", absorb, f"{trials} random j,k"))
    return out


# -- closed forms for powers of the two actions ------------------------------


def delta_power_matrix(pp: ParamPoint, i: int, size: int) -> OpMatrix:
    """i-th power of the eta-action from its three-term path recursion."""
    if i < 0:
        raise ValueError("power must be >= 0")
    table: Dict[int, List[Fraction]] = {0: [Fraction(1)] * size}
    for _ in range(i):
        new: Dict[int, List[Fraction]] = {}
        for k in range(-i, i + 1):
            col = []
            for n in range(size):
                prev_lo = table.get(k - 1, None)
                prev_mid = table.get(k, None)
                prev_hi = table.get(k + 1, None)
                v = Fraction(0)
                if prev_lo is not None and prev_lo[n]:
                    v += prev_lo[n] * recurrence_abc(pp, n + k - 1)[0]
                if prev_mid is not None and prev_mid[n]:
                    v += prev_mid[n] * recurrence_abc(pp, n + k)[1]
                if prev_hi is not None and prev_hi[n]:
                    v += prev_hi[n] * recurrence_abc(pp, n + k + 1)[2]
                col.append(v)
            new[k] = col
        table = new
    entries = [[Fraction(0)] * size for _ in range(size)]
    for k, col in table.items():
        for n in range(size):
            if 0 <= n + k < size:
                entries[n + k][n] = col[n]
    return OpMatrix(entries, size - 1 - i, i)


def _compositions(total: int, parts: int):
    """Ordered tuples of positive integers with the given sum."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def gamma_power_matrix(pp: ParamPoint, j: int, size: int) -> OpMatrix:
    """j-th power of the derivative action from its nested-sum form."""
    if j < 0:
        raise ValueError("power must be >= 0")
    if j == 0:
        return OpMatrix.identity(size)
    entries = [[Fraction(0)] * size for _ in range(size)]
    for n in range(size):
        for k1 in range(j, n + 1):
            total = Fraction(0)
            for comp in _compositions(k1, j):
                factor = Fraction(1)
                at = n
                for part in comp:
                    factor *= cnk(pp, at, part)
                    if not factor:
                        break
                    at -= part
                total += factor
            entries[n - k1][n] = total
    return OpMatrix(entries, size - 1, -j)


def power_formulas_check(pp: ParamPoint, size: int, imax: int = 3) -> Report:
    """Closed-form powers against repeated matrix products."""
    out: Report = []
    d = delta_matrix(pp, size)
    g = gamma_matrix(pp, size)
    dprod = OpMatrix.identity(size)
    gprod = OpMatrix.identity(size)
    for i in range(1, imax + 1):
        dprod = dprod * d
        gprod = gprod * g
        ok_d = delta_power_matrix(pp, i, size).agrees_with(dprod)
        ok_g = gamma_power_matrix(pp, i, size).agrees_with(gprod)
        out.append((f"eta_power_{i}", ok_d, f"size {size}"))
        out.append((f"derivative_power_{i}", ok_g, f"size {size}"))
    return out


# -- operators in (eta, d/deta) as index-shift matrices ----------------------


def flat_map(theta: DiffOp, pp: ParamPoint, size: int) -> OpMatrix:
    """Matrix of a polynomial-coefficient operator's action on {P_n}.

    Writes theta = sum_{i,j} F_ij eta^i d^j and assembles
    sum_j (sum_i F_ij mat(eta)^i) mat(d)^j; the reversed product order
    is forced by the anti-homomorphism of the matrix translation.
    """
    polys = theta.poly_coeffs()
    delta = delta_matrix(pp, size)
    ident = OpMatrix.identity(size)
    gamma = gamma_matrix(pp, size)
    total = OpMatrix.zero(size)
    gpow = ident
    for j, cj in enumerate(polys):
        if j > 0:
            gpow = gpow * gamma
        if cj.is_zero():
            continue
        cs = cj.coeffs
        inner = ident.scaled(cs[-1])
        for coeff in reversed(cs[:-1]):
            inner = inner * delta + ident.scaled(coeff)
        total = total + inner * gpow
    return total


def recurrence_bispectral(pp: ParamPoint, D: IndexSet, Y: Poly,
                          n: int) -> Dict[int, Fraction]:
    """r_{n,k} read off the index-shift matrix of the conjugated operator.

    Column n of the matrix expands the operator image of P_n over the
    classical family; dividing each row m by the eigenvalue product at m
    yields the recurrence coefficients.  The matrix is built just large
    enough that column n survives truncation.
    """
    theta = theta_op(pp, D, Y)
    L = recurrence_order(D, Y)
    polys = theta.poly_coeffs()
    imax = max((p.degree for p in polys if not p.is_zero()), default=0)
    size = n + int(imax) + L + 2
    flat = flat_map(theta, pp, size)
    out: Dict[int, Fraction] = {}
    for k in range(-L, L + 1):
        m = n + k
        if m < 0:
            continue
        v = flat.entry(m, n)
        if v == 0:
            continue
        pi = pi_factor(pp, D, m)
        if pi == 0:
            raise GenericityViolation(
                f"pi_D({m}) = 0; cannot divide the matrix route "
                f"for {D.label()}")
        out[k] = v / pi
    return out
