"""Exact-arithmetic multi-indexed orthogonal polynomials.

Construction of multi-indexed Laguerre and Jacobi polynomials as
Wronskians of virtual-state seeds, the forward/backward differential
operators intertwining them with the classical families, and the
constant-coefficient recurrence relations they satisfy -- all over
exact rational arithmetic, with the recurrence coefficients computed
by three mutually independent routes and cross-checked.
"""

__version__ = "0.1.0"
