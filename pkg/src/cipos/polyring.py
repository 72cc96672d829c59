"""Exact sparse polynomial arithmetic in the multidegree variables d1, ..., dc.

Every invariant computed by this package is an integer polynomial in the
degrees of the hypersurfaces being intersected, so this ring is the substrate
for everything else.  Coefficients are arbitrary-precision Python ints (the
bound computations involve factorial-scale binomials), terms are kept in a
canonical sparse form, and rendering uses a fixed graded-lex order so output
is reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Mapping, Sequence

#: Degree of the zero polynomial.  A sentinel that compares below every
#: integer, so `total_degree(p) < k` means "p = o(d^k)" with no special cases.
NEG_INFINITY = float("-inf")


def _grlex_key(exps: tuple[int, ...]):
    # graded-lex, descending: higher total degree first, then lexicographic
    return (-sum(exps), tuple(-e for e in exps))


class MultidegreePoly:
    """Sparse integer polynomial in ``num_vars`` variables.

    ``terms`` maps exponent tuples to nonzero integer coefficients.  Instances
    are immutable; arithmetic returns new canonical-form polynomials.  Plain
    ints mix freely with polynomials in ``+``, ``-`` and ``*``.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        if num_vars < 1:
            raise ValueError("num_vars must be a positive integer")
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != num_vars:
                    raise ValueError(f"exponent vector {exps} has length != {num_vars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if coeff:
                    clean[exps] = coeff
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultidegreePoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "MultidegreePoly":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: int) -> "MultidegreePoly":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def one(cls, num_vars: int) -> "MultidegreePoly":
        return cls.constant(num_vars, 1)

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "MultidegreePoly":
        """The variable d_{index+1} (0-based index)."""
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range")
        exps = tuple(1 if i == index else 0 for i in range(num_vars))
        return cls(num_vars, {exps: 1})

    @classmethod
    def monomial(cls, num_vars: int, exps: Sequence[int], coeff: int = 1) -> "MultidegreePoly":
        return cls(num_vars, {tuple(exps): coeff})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.num_vars, 0)

    def total_degree(self):
        """Total degree, or the -infinity sentinel for the zero polynomial."""
        if not self.terms:
            return NEG_INFINITY
        return max(sum(e) for e in self.terms)

    def dominant_part(self) -> "MultidegreePoly":
        """Sum of the terms of maximal total degree; 0 for the zero polynomial."""
        if not self.terms:
            return self
        top = self.total_degree()
        return MultidegreePoly(
            self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == top}
        )

    def is_multilinear(self) -> bool:
        return all(e <= 1 for exps in self.terms for e in exps)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    # -- ring operations ---------------------------------------------------

    def _promote(self, other):
        if isinstance(other, MultidegreePoly):
            if other.num_vars != self.num_vars:
                raise ValueError(
                    f"mixing polynomials in {self.num_vars} and {other.num_vars} variables"
                )
            return other
        if isinstance(other, int):
            return MultidegreePoly.constant(self.num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = out.get(exps, 0) + coeff
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
        return MultidegreePoly(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultidegreePoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MultidegreePoly.zero(self.num_vars)
            return MultidegreePoly(self.num_vars, {e: c * other for e, c in self.terms.items()})
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                new = out.get(key, 0) + c1 * c2
                if new:
                    out[key] = new
                else:
                    del out[key]
        return MultidegreePoly(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultidegreePoly.one(self.num_vars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultidegreePoly.constant(self.num_vars, other)
        if not isinstance(other, MultidegreePoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation and calculus -------------------------------------------

    def eval(self, point: Sequence):
        """Exact evaluation; ints stay ints, Fractions stay Fractions."""
        if len(point) != self.num_vars:
            raise ValueError(f"point has length {len(point)}, expected {self.num_vars}")
        total = 0
        for exps, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, exps):
                if e:
                    value *= x**e
            total += value
        return total

    def derivative(self, index: int) -> "MultidegreePoly":
        """Partial derivative with respect to variable ``index`` (0-based)."""
        if not 0 <= index < self.num_vars:
            raise ValueError(f"variable index {index} out of range")
        out: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e:
                key = exps[:index] + (e - 1,) + exps[index + 1 :]
                out[key] = out.get(key, 0) + coeff * e
        return MultidegreePoly(self.num_vars, out)

    def shifted(self, offset: int) -> "MultidegreePoly":
        """Substitute d_i -> d_i + offset in every variable."""
        result = MultidegreePoly.zero(self.num_vars)
        for exps, coeff in self.terms.items():
            term = MultidegreePoly.constant(self.num_vars, coeff)
            for i, e in enumerate(exps):
                if e:
                    factor = MultidegreePoly(
                        self.num_vars,
                        {
                            tuple(j if k == i else 0 for k in range(self.num_vars)): math.comb(e, j)
                            * offset ** (e - j)
                            for j in range(e + 1)
                        },
                    )
                    term = term * factor
            result = result + term
        return result

    # -- rendering ----------------------------------------------------------

    def text(self, names: Sequence[str] | None = None) -> str:
        """Canonical rendering, terms in graded-lex order, e.g. ``d1^2*d2 - 5*d1 + 3``."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"d{i + 1}" for i in range(self.num_vars)]
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"MultidegreePoly({self.num_vars}, {self.text()!r})"

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(coeff), "exps": list(exps)} for exps, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict], num_vars: int) -> "MultidegreePoly":
        return cls(num_vars, {tuple(item["exps"]): int(item["coeff"]) for item in data})


def elementary_symmetric(i: int, c: int) -> MultidegreePoly:
    """The i-th elementary symmetric polynomial in c variables (0 for i > c)."""
    if i < 0:
        raise ValueError("elementary symmetric index must be nonnegative")
    if c < 1:
        raise ValueError("need at least one variable")
    if i > c:
        return MultidegreePoly.zero(c)
    if i == 0:
        return MultidegreePoly.one(c)
    terms = {}
    for subset in itertools.combinations(range(c), i):
        exps = tuple(1 if j in subset else 0 for j in range(c))
        terms[exps] = 1
    return MultidegreePoly(c, terms)


def express_in_elementary(p: MultidegreePoly) -> list[tuple[int, int]]:
    """Write a multilinear symmetric polynomial in the elementary symmetric basis.

    Returns ``[(j, coeff), ...]`` with j descending and zero coefficients
    omitted, such that ``p == sum(coeff * elementary_symmetric(j, c))``.
    Inputs outside the span (a squared variable, or an asymmetric monomial)
    raise ValueError naming the offending monomial.
    """
    c = p.num_vars
    for exps in p.terms:
        if any(e > 1 for e in exps):
            bad = MultidegreePoly.monomial(c, exps)
            raise ValueError(f"not multilinear: monomial {bad.text()}")
    residual = p
    out = []
    for j in range(c, -1, -1):
        lead = (1,) * j + (0,) * (c - j)
        a = residual.coeff(lead)
        if a:
            out.append((j, a))
            residual = residual - elementary_symmetric(j, c) * a
    if not residual.is_zero():
        bad_exps = residual.sorted_terms()[0][0]
        bad = MultidegreePoly.monomial(c, bad_exps)
        raise ValueError(f"not symmetric: monomial {bad.text()} has no matching orbit")
    return out


def recombine_elementary(coeffs: Iterable[tuple[int, int]], c: int) -> MultidegreePoly:
    """Inverse of :func:`express_in_elementary`."""
    total = MultidegreePoly.zero(c)
    for j, a in coeffs:
        total = total + elementary_symmetric(j, c) * a
    return total


def series_inverse(c_seq: Sequence, order: int):
    """Invert a total-class series: the s-sequence dual to a c-sequence.

    ``c_seq`` lists c_1, c_2, ... (the constant term is implicitly 1; entries
    beyond the list are zero).  Returns ``[s_1, ..., s_order]`` with
    ``(1 + c_1 t + c_2 t^2 + ...) * (1 - s_1 t + s_2 t^2 - ...) = 1`` holding
    up to t^order.  Works over any commutative coefficient ring whose elements
    support ``+``, ``-``, ``*`` with each other and with plain ints; applying
    it twice gives back the input (the relation is symmetric in c and s).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")

    def c_at(i):
        return c_seq[i - 1] if 0 < i <= len(c_seq) else None

    out: list = []
    for k in range(1, order + 1):
        acc = 0
        for j in range(k):
            ck = c_at(k - j)
            if ck is None:
                continue
            term = ck if j == 0 else ck * out[j - 1]
            acc = acc + term if j % 2 == 0 else acc - term
        out.append(acc if k % 2 == 1 else -acc)
    return out
