"""Effective degree thresholds, in exact rational arithmetic.

Root bounds for monic polynomials, the derivative-cascade threshold for
symmetric polynomials in the elementary-symmetric span, the closed-form
coefficients of the first-order Morse difference, and the explicit degree
bounds (general rough form, sharpened surface form, and the shifted variant
the main bigness argument consumes).  Degrees are integers, so callers are
expected to ceil; every returned threshold is a Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import MultidegreePoly, elementary_symmetric


def monic_root_bound(coeffs: Sequence) -> Fraction:
    """Bound beyond which a monic univariate polynomial is positive.

    ``coeffs`` lists the non-leading coefficients a_0..a_{k-1} of
    x^k + a_{k-1} x^{k-1} + ... + a_0; at any x >= 1 + max |a_i| the value is
    positive (each trailing term is dominated by a slice of x^k).
    """
    if len(coeffs) < 1:
        raise ValueError("polynomial must have degree >= 1")
    return 1 + max(abs(Fraction(a)) for a in coeffs)


def morse_coeff(N: int, n: int, a: int, j: int) -> int:
    """Coefficient of the j-th elementary symmetric polynomial in the
    first-order Morse difference (codimension >= dimension case).

    The half-integer weight 2^{i-1}(2 - i(2+a)) is rearranged as
    2^i - i(2+a)2^{i-1}, which is an integer for every i >= 0 (value 1 at
    i = 0), so the whole sum stays in integer arithmetic.
    """
    c = N - n
    if n > c:
        raise ValueError(f"requires n <= c, got n={n}, c={c}")
    if not 0 <= j <= n:
        raise ValueError(f"index j={j} outside 0..{n}")
    total = 0
    for i in range(n - j + 1):
        weight = 2**i - i * (2 + a) * 2 ** (i - 1) if i else 1
        total += (-1) ** i * weight * math.comb(2 * n - 1, i) * math.comb(N + n - i - j, N)
    return (-1) ** (n - j) * total


def morse_closed_form(N: int, n: int, a: int) -> MultidegreePoly:
    """The first-order Morse difference as a polynomial in the degrees."""
    c = N - n
    total = MultidegreePoly.zero(c)
    for j in range(n + 1):
        total = total + elementary_symmetric(j, c) * morse_coeff(N, n, a, j)
    return total


def symmetric_positivity_threshold(coeffs: Iterable[tuple[int, int]], c: int, k: int) -> Fraction:
    """Uniform positivity threshold for a monic combination of elementary
    symmetric polynomials in c variables.

    ``coeffs`` lists (j, a_j) with a_k = 1 required (callers divide first).
    The iterated-derivative cascade reduces positivity on [r, inf)^c to the
    monic root bound applied to each diagonal derivative, and those bounds are
    all dominated by 1 + max |a_i| binom(c, i) / binom(c, k) over i < k.
    """
    table = dict(coeffs)
    if k < 1 or k > c:
        raise ValueError(f"leading index k={k} must satisfy 1 <= k <= c")
    if table.get(k) != 1:
        raise ValueError("leading coefficient a_k must be 1; divide it out first")
    if any(j < 0 or j > k for j in table):
        raise ValueError("coefficient indices must lie in 0..k")
    worst = Fraction(0)
    for i in range(k):
        a_i = table.get(i, 0)
        if a_i:
            worst = max(worst, Fraction(abs(a_i) * math.comb(c, i), math.comb(c, k)))
    return 1 + worst


def shifted_positivity_threshold(poly: MultidegreePoly, cap: int = 1 << 40) -> int:
    """Smallest integer r such that poly(r + t_1, ..., r + t_c) has only
    nonnegative coefficients and a positive constant term.

    Taylor expansion then makes the polynomial positive on all of [r, inf)^c.
    Used for symmetric polynomials outside the elementary-symmetric span,
    where the derivative cascade does not apply.  The valid set of r is upward
    closed, so a doubling scan plus bisection finds the frontier.
    """

    def sound(r: int) -> bool:
        shifted = poly.shifted(r)
        return (
            all(v > 0 for v in shifted.terms.values())
            and shifted.constant_term() > 0
        )

    if sound(1):
        return 1
    hi = 2
    while not sound(hi):
        hi *= 2
        if hi > cap:
            raise ArithmeticError("no shifted-positivity threshold found below cap")
    lo = hi // 2  # known unsound
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sound(mid):
            hi = mid
        else:
            lo = mid
    return hi


def surface_degree_bound(N: int, a: int) -> Fraction:
    """Sharpened uniform degree bound for surfaces (dimension 2) in P^N.

    Valid for N >= 4, where the constant coefficient of the Morse difference
    is already nonnegative and only the linear term needs to be dominated.
    """
    if N < 4:
        raise ValueError("surface bound requires N >= 4")
    return Fraction(2 * (N + 1 + 3 * a), N - 3)


def rough_degree_bound(N: int, n: int, a: int) -> Fraction:
    """General uniform degree bound for n <= c, exact rational value."""
    c = N - n
    if n > c:
        raise ValueError(f"requires n <= c (N >= 2n), got n={n}, c={c}")
    first = (
        Fraction(2 ** (n - 1) * (n * (2 + a) - 2) * n * n, N + 1) * math.comb(2 * n - 1, n)
        + 1
    )
    ratio = Fraction(
        math.factorial(N + n) * math.factorial(N - 2 * n),
        math.factorial(N) * math.factorial(N - n),
    )
    return first * math.comb(n, n // 2) * ratio


def rough_bound_limit(n: int) -> int:
    """Large-codimension limit constant of the rough bound at shifted twist."""
    return 2 ** (n - 1) * n**3 * math.comb(2 * n - 1, n) * math.comb(n, n // 2)


def main_theorem_degree_bound(N: int, n: int, a: int) -> Fraction:
    """Degree threshold feeding the bigness-of-the-twisted-bundle argument:
    the twist is shifted by N, and surfaces use the sharpened bound."""
    if n == 2:
        return surface_degree_bound(N, a + N)
    return rough_degree_bound(N, n, a + N)


@dataclass
class BoundReport:
    """Closed-form Morse coefficients plus the selected degree threshold.

    Bounds are exact rationals; degrees are integers, so the ceiling is
    reported alongside and is the value to compare degrees against.
    """

    N: int
    n: int
    a: int
    coefficients: list[int]
    gamma: Fraction | None
    method: str

    def __post_init__(self):
        assert self.coefficients[-1] == 1, "leading elementary coefficient must be 1"

    @property
    def gamma_ceil(self) -> int | None:
        return None if self.gamma is None else math.ceil(self.gamma)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "a": self.a,
            "coefficients": [str(v) for v in self.coefficients],
            "gamma": str(self.gamma) if self.gamma is not None else None,
            "gamma_ceil": self.gamma_ceil,
            "method": self.method,
        }
