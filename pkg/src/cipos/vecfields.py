"""Vector fields on the affine chart of the universal relative tangent space.

The chart carries coordinates z_1..z_N on the ambient space, velocity
coordinates z'_1..z'_N, and one coefficient variable per monomial of each
defining equation.  Fields are verified tangent either identically (exact
polynomial vanishing of their action on the defining equations, possible for
the solved-coefficient and coordinate families) or by exact evaluation at
random rational points of the locus.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .polyring import MultidegreePoly


def _monomials_up_to(N: int, degree: int) -> list[tuple[int, ...]]:
    out = [
        alpha
        for alpha in itertools.product(range(degree + 1), repeat=N)
        if sum(alpha) <= degree
    ]
    out.sort(key=lambda a: (sum(a), a))
    return out


class UniversalChart:
    """Variable inventory for the family of all intersections of c hypersurfaces.

    Coordinates are ordered z_1..z_N, then z'_1..z'_N, then the coefficient
    variables of each hypersurface block (monomial exponents up to the block's
    degree, in graded order).  All chart polynomials are integer polynomials
    over this inventory.
    """

    def __init__(self, N: int, degrees: Sequence[int]):
        if N < 1:
            raise ValueError("ambient dimension must be >= 1")
        if not degrees or any(d < 1 for d in degrees):
            raise ValueError("each degree must be >= 1")
        self.N = N
        self.degrees = tuple(degrees)
        self.c = len(self.degrees)
        self.alphas = [_monomials_up_to(N, d) for d in self.degrees]
        offset = 2 * N
        self._a_pos: list[dict[tuple[int, ...], int]] = []
        for alphas in self.alphas:
            self._a_pos.append({alpha: offset + t for t, alpha in enumerate(alphas)})
            offset += len(alphas)
        self.num_vars = offset

    # -- variable indexing ----------------------------------------------------

    def z_index(self, j: int) -> int:
        if not 1 <= j <= self.N:
            raise ValueError(f"z index {j} outside 1..{self.N}")
        return j - 1

    def zp_index(self, k: int) -> int:
        if not 1 <= k <= self.N:
            raise ValueError(f"z' index {k} outside 1..{self.N}")
        return self.N + k - 1

    def a_index(self, i: int, alpha: Sequence[int]) -> int:
        if not 1 <= i <= self.c:
            raise ValueError(f"block index {i} outside 1..{self.c}")
        alpha = tuple(alpha)
        pos = self._a_pos[i - 1].get(alpha)
        if pos is None:
            raise ValueError(f"no coefficient variable a^{i}_{alpha} (degree {self.degrees[i - 1]})")
        return pos

    def var_name(self, index: int) -> str:
        if index < self.N:
            return f"z{index + 1}"
        if index < 2 * self.N:
            return f"zp{index - self.N + 1}"
        for i, pos in enumerate(self._a_pos):
            for alpha, p in pos.items():
                if p == index:
                    return f"a{i + 1}_" + "".join(str(x) for x in alpha)
        raise ValueError(f"variable index {index} out of range")

    def names(self) -> list[str]:
        return [self.var_name(i) for i in range(self.num_vars)]

    # -- polynomial builders ----------------------------------------------------

    def poly(self, terms) -> MultidegreePoly:
        return MultidegreePoly(self.num_vars, terms)

    def var(self, index: int) -> MultidegreePoly:
        return MultidegreePoly.variable(self.num_vars, index)

    def monomial(self, pairs: Mapping[int, int], coeff: int = 1) -> MultidegreePoly:
        exps = [0] * self.num_vars
        for index, e in pairs.items():
            exps[index] += e
        return MultidegreePoly.monomial(self.num_vars, exps, coeff)

    def z_degree(self, poly: MultidegreePoly) -> int:
        return self._block_degree(poly, 0, self.N)

    def a_degree(self, poly: MultidegreePoly) -> int:
        return self._block_degree(poly, 2 * self.N, self.num_vars)

    @staticmethod
    def _block_degree(poly: MultidegreePoly, lo: int, hi: int) -> int:
        if poly.is_zero():
            return 0
        return max(sum(exps[lo:hi]) for exps in poly.terms)


def defining_equations(chart: UniversalChart) -> tuple[list[MultidegreePoly], list[MultidegreePoly]]:
    """The equation of each hypersurface block and its derivative pairing with
    the velocities; both are linear in the block's coefficient variables."""
    eqs, deqs = [], []
    for i in range(1, chart.c + 1):
        f = MultidegreePoly.zero(chart.num_vars)
        fp = MultidegreePoly.zero(chart.num_vars)
        for alpha in chart.alphas[i - 1]:
            a_var = chart.a_index(i, alpha)
            pairs = {a_var: 1}
            for j, e in enumerate(alpha):
                if e:
                    pairs[chart.z_index(j + 1)] = e
            f = f + chart.monomial(pairs)
            for k, e in enumerate(alpha):
                if e:
                    dpairs = {a_var: 1, chart.zp_index(k + 1): 1}
                    for j, ej in enumerate(alpha):
                        target = ej - 1 if j == k else ej
                        if target:
                            dpairs[chart.z_index(j + 1)] = target
                    fp = fp + chart.monomial(dpairs, e)
        eqs.append(f)
        deqs.append(fp)
    return eqs, deqs


@dataclass
class VectorField:
    """Coefficient table: variable index -> polynomial coefficient of that
    partial derivative.  Pole orders record the actual maximal z- and
    a-degrees over the stored coefficients."""

    chart: UniversalChart
    coefficients: dict[int, MultidegreePoly] = field(default_factory=dict)
    family: str = "custom"

    def __post_init__(self):
        self.coefficients = {
            v: p for v, p in self.coefficients.items() if not p.is_zero()
        }

    @property
    def z_pole_order(self) -> int:
        polys = self.coefficients.values()
        return max((self.chart.z_degree(p) for p in polys), default=0)

    @property
    def a_pole_order(self) -> int:
        polys = self.coefficients.values()
        return max((self.chart.a_degree(p) for p in polys), default=0)

    def is_zero(self) -> bool:
        return not self.coefficients


def lie_derivative(field_: VectorField, poly: MultidegreePoly) -> MultidegreePoly:
    """Apply the field to a chart polynomial: sum of coefficient * partial."""
    total = MultidegreePoly.zero(field_.chart.num_vars)
    for index, coeff in field_.coefficients.items():
        total = total + coeff * poly.derivative(index)
    return total


def solved_coefficient_field(
    chart: UniversalChart, i: int, free_data: Mapping[tuple[int, ...], int]
) -> VectorField:
    """Coefficient-direction field with the two lowest coefficients solved.

    Free data assigns integers to the coefficient slots of block i with
    exponent weight at most min(N, d_i), excluding the constant and the first
    linear slot, which are pinned by the two tangency equations.  The raw
    solution has a single velocity denominator; the returned field is the
    cleared form (multiplied through by z'_1), so tangency holds as an exact
    polynomial identity and the z-degree of every coefficient is at most N.
    """
    N = chart.N
    if not 1 <= i <= chart.c:
        raise ValueError(f"block index {i} outside 1..{chart.c}")
    d_i = chart.degrees[i - 1]
    cutoff = min(N, d_i)
    e1 = tuple(1 if j == 0 else 0 for j in range(N))
    zero_alpha = (0,) * N
    for alpha in free_data:
        alpha = tuple(alpha)
        if sum(alpha) > N:
            raise ValueError(f"free slot {alpha} has weight > {N}; family only covers that range")
        if sum(alpha) > cutoff:
            raise ValueError(f"free slot {alpha} exceeds the block degree {d_i}")
        if alpha in (zero_alpha, e1):
            raise ValueError(f"slot {alpha} is pinned by the tangency system, not free")

    z1 = chart.var(chart.z_index(1))
    zp1 = chart.var(chart.zp_index(1))
    # residuals of the two tangency equations over the free slots
    r0 = MultidegreePoly.zero(chart.num_vars)
    r1 = MultidegreePoly.zero(chart.num_vars)
    for alpha, value in free_data.items():
        alpha = tuple(alpha)
        if not value:
            continue
        z_pairs = {chart.z_index(j + 1): e for j, e in enumerate(alpha) if e}
        r0 = r0 + chart.monomial(z_pairs, value)
        for k, e in enumerate(alpha):
            if e:
                pairs = {chart.zp_index(k + 1): 1}
                for j, ej in enumerate(alpha):
                    target = ej - 1 if j == k else ej
                    if target:
                        pairs[chart.z_index(j + 1)] = target
                r1 = r1 + chart.monomial(pairs, value * e)
    coefficients = {}
    for alpha, value in free_data.items():
        if value:
            coefficients[chart.a_index(i, tuple(alpha))] = zp1 * value
    lin = -r1
    const = z1 * r1 - zp1 * r0
    if not lin.is_zero():
        coefficients[chart.a_index(i, e1)] = lin
    if not const.is_zero():
        coefficients[chart.a_index(i, zero_alpha)] = const
    return VectorField(chart, coefficients, family="solved")


def coordinate_field(chart: UniversalChart, j: int) -> VectorField:
    """Tangent lift of the j-th coordinate direction: the naked partial in z_j
    corrected by a shift on every coefficient block; order one in each
    coefficient variable."""
    if not 1 <= j <= chart.N:
        raise ValueError(f"coordinate index {j} outside 1..{chart.N}")
    coefficients = {chart.z_index(j): MultidegreePoly.one(chart.num_vars)}
    for i in range(1, chart.c + 1):
        d_i = chart.degrees[i - 1]
        for alpha in chart.alphas[i - 1]:
            if sum(alpha) > d_i - 1:
                continue
            shifted = tuple(e + 1 if t == j - 1 else e for t, e in enumerate(alpha))
            source = chart.a_index(i, shifted)
            target = chart.a_index(i, alpha)
            weight = alpha[j - 1] + 1
            prev = coefficients.get(target, MultidegreePoly.zero(chart.num_vars))
            coefficients[target] = prev - chart.var(source) * weight
    return VectorField(chart, coefficients, family="tj")


def coefficient_shift_field(
    chart: UniversalChart,
    i: int,
    alpha: Sequence[int],
    ell: Sequence[int],
    convention: str = "single",
) -> VectorField:
    """Higher-weight coefficient-direction fields, no tangency asserted.

    The defining display admits two index readings, both exposed: "single"
    targets the one slot alpha - ell with the full binomial z-profile,
    "spread" distributes over the slots alpha - ell' for every split
    ell' + ell'' = ell.  Requires |ell| <= N and alpha >= ell componentwise.
    """
    alpha, ell = tuple(alpha), tuple(ell)
    if not 1 <= i <= chart.c:
        raise ValueError(f"block index {i} outside 1..{chart.c}")
    if len(alpha) != chart.N or len(ell) != chart.N:
        raise ValueError("alpha and ell must have one entry per ambient coordinate")
    if sum(ell) > chart.N:
        raise ValueError(f"|ell| = {sum(ell)} exceeds the ambient dimension {chart.N}")
    if any(a < e for a, e in zip(alpha, ell)):
        raise ValueError("need alpha >= ell componentwise")
    if convention not in ("single", "spread"):
        raise ValueError("convention must be 'single' or 'spread'")
    coefficients: dict[int, MultidegreePoly] = {}
    splits = list(itertools.product(*(range(e + 1) for e in ell)))
    if convention == "single":
        target = chart.a_index(i, tuple(a - e for a, e in zip(alpha, ell)))
        total = MultidegreePoly.zero(chart.num_vars)
        for prime in splits:
            second = tuple(e - p for e, p in zip(ell, prime))
            weight = 1
            for e, p in zip(ell, prime):
                weight *= math.comb(e, p)
            pairs = {chart.z_index(j + 1): s for j, s in enumerate(second) if s}
            total = total + chart.monomial(pairs, weight)
        coefficients[target] = total
    else:
        for prime in splits:
            second = tuple(e - p for e, p in zip(ell, prime))
            weight = 1
            for e, p in zip(ell, prime):
                weight *= math.comb(e, p)
            target = chart.a_index(i, tuple(a - p for a, p in zip(alpha, prime)))
            pairs = {chart.z_index(j + 1): s for j, s in enumerate(second) if s}
            prev = coefficients.get(target, MultidegreePoly.zero(chart.num_vars))
            coefficients[target] = prev + chart.monomial(pairs, weight)
    return VectorField(chart, coefficients, family="talpha")


def velocity_field(
    chart: UniversalChart,
    matrix: Sequence[Sequence],
    a_solution: Callable[[int, tuple[int, ...]], MultidegreePoly] | None = None,
) -> VectorField:
    """Linear action on the velocity coordinates plus a pluggable coefficient
    correction; no tangency asserted for the default (zero) correction."""
    N = chart.N
    if len(matrix) != N or any(len(row) != N for row in matrix):
        raise ValueError(f"matrix must be {N}x{N}")
    if _rational_det(matrix) == 0:
        raise ValueError("matrix must be invertible over the rationals")
    coefficients: dict[int, MultidegreePoly] = {}
    for k in range(1, N + 1):
        poly = MultidegreePoly.zero(chart.num_vars)
        for ell in range(1, N + 1):
            entry = matrix[ell - 1][k - 1]
            if entry:
                poly = poly + chart.var(chart.zp_index(ell)) * int(entry)
        if not poly.is_zero():
            coefficients[chart.zp_index(k)] = poly
    if a_solution is not None:
        for i in range(1, chart.c + 1):
            for alpha in chart.alphas[i - 1]:
                poly = a_solution(i, alpha)
                if poly is not None and not poly.is_zero():
                    coefficients[chart.a_index(i, alpha)] = poly
    return VectorField(chart, coefficients, family="tlambda")


def _rational_det(matrix: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


@dataclass
class TangencyReport:
    """Exact residuals of the field against every defining equation at sampled
    rational points of the universal locus."""

    family: str
    samples: int
    seed: int
    nonzero_residuals: list[str]

    @property
    def all_zero(self) -> bool:
        return not self.nonzero_residuals

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "samples": self.samples,
            "seed": self.seed,
            "residuals": self.nonzero_residuals,
            "all_zero": self.all_zero,
        }


def point_tangency_check(field_: VectorField, samples: int = 100, seed: int = 0) -> TangencyReport:
    """Evaluate the field's action on the defining equations at exact rational
    points of the locus.

    Points are built by drawing integer coordinates and velocities (first
    velocity nonzero) and integer values for all but two coefficient slots per
    block; the remaining two are solved from the block's pair of equations,
    which are linear with triangular structure, so the solve is exact.
    Degenerate draws are retried a bounded number of times.
    """
    chart = field_.chart
    if samples < 1:
        raise ValueError("need at least one sample")
    eqs, deqs = defining_equations(chart)
    actions = [(f"T(f{i + 1})", lie_derivative(field_, eqs[i])) for i in range(chart.c)]
    actions += [(f"T(f'{i + 1})", lie_derivative(field_, deqs[i])) for i in range(chart.c)]
    rng = random.Random(seed)
    nonzero: list[str] = []
    e1 = tuple(1 if j == 0 else 0 for j in range(chart.N))
    zero_alpha = (0,) * chart.N
    for s in range(samples):
        point = _sample_locus_point(chart, rng, e1, zero_alpha)
        for label, action in actions:
            value = action.eval(point)
            if value != 0:
                nonzero.append(f"sample {s}: {label} = {value}")
    return TangencyReport(
        family=field_.family, samples=samples, seed=seed, nonzero_residuals=nonzero
    )


def _sample_locus_point(chart, rng, e1, zero_alpha, retries: int = 32):
    for _ in range(retries):
        point: list = [Fraction(rng.randint(-5, 5)) for _ in range(chart.num_vars)]
        zp1 = Fraction(rng.randint(1, 5) * rng.choice((-1, 1)))
        point[chart.zp_index(1)] = zp1
        degenerate = False
        for i in range(1, chart.c + 1):
            rest_f = Fraction(0)
            rest_fp = Fraction(0)
            for alpha in chart.alphas[i - 1]:
                if alpha in (zero_alpha, e1):
                    continue
                a_val = point[chart.a_index(i, alpha)]
                z_val = Fraction(1)
                for j, e in enumerate(alpha):
                    if e:
                        z_val *= point[chart.z_index(j + 1)] ** e
                rest_f += a_val * z_val
                d_val = Fraction(0)
                for k, e in enumerate(alpha):
                    if e:
                        prod = Fraction(e)
                        for j, ej in enumerate(alpha):
                            target = ej - 1 if j == k else ej
                            if target:
                                prod *= point[chart.z_index(j + 1)] ** target
                        d_val += prod * point[chart.zp_index(k + 1)]
                rest_fp += a_val * d_val
            if zp1 == 0:
                degenerate = True
                break
            a_e1 = -rest_fp / zp1
            a_zero = -a_e1 * point[chart.z_index(1)] - rest_f
            point[chart.a_index(i, e1)] = a_e1
            point[chart.a_index(i, zero_alpha)] = a_zero
        if not degenerate:
            return point
    raise RuntimeError("could not sample a non-degenerate locus point")
