"""Lagrange interpolation certificates for the zero-value of low-degree polynomials.

Writing a real polynomial p of degree < |S| in Lagrange form over a node
set S inside {0, ..., n} and applying the triangle inequality gives

    p(0) <= B(n, S) * sum_i C(n, i) |p(i)|,
    B(n, S) = max_{i in S} C(n,i)^-1 prod_{l in S, l != i} l / |l - i|.

With the two-interval node set S = ((n/8, 3n/8] u [5n/8, 7n/8)) and n
divisible by 8, the factor B is at most (5/2)(7/8)^(n/8), exponentially
small, which turns the LP value 2^n g(0) into an exponential lower bound
on the complement's theta.  Everything here is exact rational arithmetic;
base-2 logarithms appear only in display fields.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple, Union

__all__ = [
    "InterpSet",
    "InterpReport",
    "CHAIN_RATE",
    "default_set",
    "lagrange_factor",
    "lagrange_factors",
    "interp_bound",
    "verify_interp_inequality",
    "rate_report",
    "set_search",
]

# Rate certified by the geometric cap: log2(8/7)/8 per coordinate.
CHAIN_RATE = math.log2(8.0 / 7.0) / 8.0


@dataclass(frozen=True)
class InterpSet:
    """A node set inside {0, ..., n}; certifies polynomial degrees < |S|."""

    n: int
    points: Tuple[int, ...]

    def __post_init__(self) -> None:
        pts = tuple(sorted(set(self.points)))
        if pts != self.points:
            object.__setattr__(self, "points", pts)
        if not self.points:
            raise ValueError("node set must be nonempty")
        if self.points[0] < 0 or self.points[-1] > self.n:
            raise ValueError(f"nodes must lie in 0..{self.n}")

    @property
    def degree_capacity(self) -> int:
        """Largest certified degree bound: degrees < |S| are covered."""
        return len(self.points)


@dataclass(frozen=True, eq=False)
class InterpReport:
    """Exact certificate summary for one n (divisible by 8)."""

    n: int
    k: int
    points: Tuple[int, ...]
    factors: Tuple[Fraction, ...]
    bound: Fraction
    eps_emp: float
    geometric_cap: Fraction
    theta_upper: Fraction
    within_cap: bool
    meets_chain_rate: bool


def default_set(n: int) -> InterpSet:
    """The two-interval node set ((n/8, 3n/8] u [5n/8, 7n/8)), size n/2."""
    if n % 8 != 0 or n <= 0:
        raise ValueError(f"n must be a positive multiple of 8, got {n}")
    k = n // 8
    first = range(k + 1, 3 * k + 1)
    second = range(5 * k, 7 * k)
    return InterpSet(n, tuple(first) + tuple(second))


def _points_of(s: Union[InterpSet, Iterable[int]]) -> Tuple[int, ...]:
    if isinstance(s, InterpSet):
        return s.points
    return tuple(sorted(set(int(v) for v in s)))


def lagrange_factor(n: int, s: Union[InterpSet, Iterable[int]], i: int) -> Fraction:
    """Exact factor C(n,i)^-1 prod_{l in S, l != i} l / |l - i|."""
    points = _points_of(s)
    if i not in points:
        raise ValueError(f"node {i} is not in the set {points}")
    out = Fraction(1, math.comb(n, i))
    for l in points:
        if l != i:
            out *= Fraction(l, abs(l - i))
    return out


def lagrange_factors(n: int, s: Union[InterpSet, Iterable[int]]) -> Dict[int, Fraction]:
    points = _points_of(s)
    return {i: lagrange_factor(n, points, i) for i in points}


def interp_bound(n: int, s: Union[InterpSet, Iterable[int]]) -> Fraction:
    """B(n, S): the certificate constant, exact.

    Contract: p(0) <= B * sum_{i=0}^n C(n,i) |p(i)| for every real
    polynomial of degree < |S|.
    """
    return max(lagrange_factors(n, s).values())


def _poly_eval(coeffs: Sequence[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def verify_interp_inequality(
    coeffs: Sequence, n: int, s: Union[InterpSet, Iterable[int]]
) -> bool:
    """Exactly evaluate the certificate inequality for one polynomial.

    ``coeffs`` lists rational coefficients from the constant term up;
    the degree must be below the node-set size.  Returns True whenever
    the contract holds; a False falsifies the certificate machinery.
    """
    points = _points_of(s)
    cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    degree = len(cs) - 1
    if degree >= len(points):
        raise ValueError(f"degree {degree} is not below the node count {len(points)}")
    lhs = _poly_eval(cs, 0)
    rhs = interp_bound(n, points) * sum(
        math.comb(n, i) * abs(_poly_eval(cs, i)) for i in range(n + 1)
    )
    return lhs <= rhs


def rate_report(n: int, s: Union[InterpSet, None] = None) -> InterpReport:
    """Exact report: factors, bound B, the geometric cap, and rate flags."""
    if n % 8 != 0 or n <= 0:
        raise ValueError(f"n must be a positive multiple of 8, got {n}")
    node_set = default_set(n) if s is None else s
    k = n // 8
    factors = lagrange_factors(n, node_set)
    bound = max(factors.values())
    cap = Fraction(5, 2) * Fraction(7, 8) ** k
    eps_emp = -(math.log2(bound.numerator) - math.log2(bound.denominator)) / n
    return InterpReport(
        n=n,
        k=k,
        points=node_set.points,
        factors=tuple(factors[i] for i in node_set.points),
        bound=bound,
        eps_emp=eps_emp,
        geometric_cap=cap,
        theta_upper=Fraction(2) ** n * bound,
        within_cap=bound <= cap,
        meets_chain_rate=eps_emp >= CHAIN_RATE,
    )


def set_search(n: int, budget: int, seed: int = 0) -> InterpSet:
    """Improvement-only local search over size-n/2 node sets.

    Starts from the default set and proposes single-node swaps; a swap is
    kept only when it strictly lowers the bound, so the result is never
    worse than the default.  Deterministic for a fixed seed.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    current = default_set(n)
    best = interp_bound(n, current)
    rng = random.Random(seed)
    points = set(current.points)
    for _ in range(budget):
        out = rng.choice(sorted(points))
        candidates = [v for v in range(n + 1) if v not in points]
        inc = rng.choice(candidates)
        trial = (points - {out}) | {inc}
        trial_bound = interp_bound(n, trial)
        if trial_bound < best:
            points = trial
            best = trial_bound
    return InterpSet(n, tuple(sorted(points)))
