"""Lovász theta of the weight-band Cayley graphs via character-reduced LPs.

For translation-invariant graphs the semidefinite program collapses to a
linear program over a single function g on the group:

    maximize  m^n g(0)   subject to
    g(x) >= 0,   sum_x g(x) = 1,   sum_x g(x) conj(chi_s(x)) = 0
                                   for every s in the connection set.

``theta_dense`` solves this verbatim (exact rationals for m = 2, complex
rows split into real/imaginary pairs on the float path for m >= 3).  For
m = 2 the graphs are also invariant under coordinate permutations, so g
may be averaged onto Hamming shells; ``theta_reduced`` solves the
resulting Krawtchouk system in n + 1 variables.  The reduction is
justified empirically: the acceptance suite requires exact equality of
the two values on every band at small n, which licenses the reduced path
at large n where the dense LP is out of reach.

The same dense LP with connection band [1, k] computes the maximal
all-zeros probability of k-wise independent bit distributions, scaled by
2^-n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import numpy as np

from .cayley import CayleySpec, connection_ranks
from .group_core import (
    GroupFunction,
    GroupSpec,
    char_column,
    check_guard,
    fourier_forward,
    lp_norm,
    poly_degree,
    weights_by_rank,
)
from .ratlp import (
    OPTIMAL,
    LpProblem,
    LpSolution,
    lp_solve,
    lp_solve_float,
    lp_verify_certificate,
)

__all__ = [
    "KrawtchoukTable",
    "ThetaReport",
    "krawtchouk",
    "theta_dense",
    "theta_reduced",
    "theta_complement_lower",
    "kwise_max_zero_prob",
    "is_kwise_independent",
    "hypercontractivity_check",
]

DENSE_EXACT_GUARD = 1024
DENSE_FLOAT_GUARD = 729
REDUCED_GUARD = 4096
KWISE_GUARD = 10


def krawtchouk(n: int, j: int, w: int) -> int:
    """Degree-j Krawtchouk value at w: sum_s (-1)^s C(w,s) C(n-w, j-s).

    Equals the character sum over the weight-j shell paired with any
    weight-w point, hence K(n,0,w) = 1, K(n,1,w) = n - 2w and
    K(n,j,0) = C(n,j).
    """
    if not (0 <= j <= n and 0 <= w <= n):
        raise ValueError(f"krawtchouk needs 0 <= j,w <= {n}, got j={j} w={w}")
    return sum(
        (-1) ** s * math.comb(w, s) * math.comb(n - w, j - s)
        for s in range(max(0, j - (n - w)), min(j, w) + 1)
    )


@dataclass(frozen=True, eq=False)
class KrawtchoukTable:
    """Table K[w][j]: character sum of the weight-w shell against a weight-j point."""

    n: int
    table: Tuple[Tuple[int, ...], ...]

    @classmethod
    def build(cls, n: int) -> "KrawtchoukTable":
        return cls(n, tuple(tuple(krawtchouk(n, w, j) for j in range(n + 1)) for w in range(n + 1)))

    def __getitem__(self, w: int) -> Tuple[int, ...]:
        return self.table[w]


@lru_cache(maxsize=64)
def _kraw_table(n: int) -> KrawtchoukTable:
    return KrawtchoukTable.build(n)


@dataclass(frozen=True, eq=False)
class ThetaReport:
    """Certified theta value with the complement and rank-cap context.

    ``theta`` is an exact Fraction when ``exact`` and a float otherwise.
    ``complement_lower_log2`` is n log2(m) - log2(theta), the certified
    lower bound on the complement's theta from the product inequality.
    ``symork_cap_log2`` is present for upper-tail bands where the strict
    threshold parameter d = t_lo - 1 is valid: the symmetric-rank formula
    value that caps the orthogonal rank from above.
    """

    graph: CayleySpec
    theta: Union[Fraction, float]
    log2_theta: float
    method: str
    exact: bool
    complement_lower_log2: float
    symork_cap_log2: Optional[float]
    certificates: Tuple[LpSolution, ...]
    certificate_ok: Optional[bool]


def _log2_fraction(q: Union[Fraction, float]) -> float:
    if isinstance(q, Fraction):
        return math.log2(q.numerator) - math.log2(q.denominator)
    return math.log2(q)


def _symork_cap_log2(graph: CayleySpec) -> Optional[float]:
    g = graph.group
    if graph.t_hi != g.max_weight:
        return None
    d = graph.t_lo - 1
    if d < 1 or d % (g.m - 1) != 0:
        return None
    return (g.n - d // (g.m - 1)) * math.log2(g.m)


def _make_report(
    graph: CayleySpec,
    value: Union[Fraction, float],
    method: str,
    exact: bool,
    certificates: Tuple[LpSolution, ...],
    certificate_ok: Optional[bool],
) -> ThetaReport:
    log2_theta = _log2_fraction(value)
    n_log2m = graph.group.n * math.log2(graph.group.m)
    return ThetaReport(
        graph=graph,
        theta=value,
        log2_theta=log2_theta,
        method=method,
        exact=exact,
        complement_lower_log2=n_log2m - log2_theta,
        symork_cap_log2=_symork_cap_log2(graph),
        certificates=certificates,
        certificate_ok=certificate_ok,
    )


def _dense_problem_m2(graph: CayleySpec, objective_scale: Fraction) -> LpProblem:
    order = graph.group.order
    conn = connection_ranks(graph)
    rows: List[List[Fraction]] = [[Fraction(1)] * order]
    rhs: List[Fraction] = [Fraction(1)]
    for s in conn:
        rows.append([Fraction(1 - 2 * ((s & x).bit_count() & 1)) for x in range(order)])
        rhs.append(Fraction(0))
    objective = [objective_scale] + [Fraction(0)] * (order - 1)
    return LpProblem.from_data(objective, rows, rhs)


def theta_dense(graph: CayleySpec) -> ThetaReport:
    """Solve the translation-reduced LP with one row per connection element."""
    g = graph.group
    if g.m == 2:
        check_guard("dense theta order", g.order, DENSE_EXACT_GUARD)
        problem = _dense_problem_m2(graph, Fraction(g.order))
        solution = lp_solve(problem)
        if solution.status != OPTIMAL:
            raise RuntimeError(f"dense theta LP unexpectedly {solution.status}")
        ok = lp_verify_certificate(problem, solution)
        return _make_report(graph, solution.value, "dense", True, (solution,), ok)

    check_guard("dense theta order (float path)", g.order, DENSE_FLOAT_GUARD)
    order = g.order
    conn = connection_ranks(graph)
    rows: List[List[float]] = [[1.0] * order]
    rhs: List[float] = [1.0]
    for s in conn:
        chars = char_column(g, s)
        rows.append([c for c in chars.real])
        rhs.append(0.0)
        rows.append([-c for c in chars.imag])
        rhs.append(0.0)
    objective = [float(order)] + [0.0] * (order - 1)
    problem = LpProblem.from_data(objective, rows, rhs)
    solution = lp_solve_float(problem)
    if solution.status != OPTIMAL:
        raise RuntimeError(f"dense theta LP unexpectedly {solution.status}")
    return _make_report(graph, float(solution.value), "dense", False, (solution,), None)


def theta_reduced(
    n: int, t_lo: int, t_hi: int, graph: Optional[CayleySpec] = None
) -> ThetaReport:
    """Permutation-symmetrized LP on Hamming shells (m = 2 only).

    Variables are the common values y_w of g on the weight-w shells;
    maximize 2^n y_0 subject to sum_w C(n,w) y_w = 1 and the Krawtchouk
    rows sum_w K[w][j] y_w = 0 for every connection weight j.
    """
    check_guard("reduced theta n", n, REDUCED_GUARD)
    if graph is None:
        graph = CayleySpec(GroupSpec(2, n), t_lo, t_hi)
    else:
        if graph.group.m != 2 or graph.group.n != n:
            raise ValueError("graph does not match the reduced problem size")
        if (graph.t_lo, graph.t_hi) != (t_lo, t_hi):
            raise ValueError("graph band does not match the requested band")
    kr = _kraw_table(n)
    rows: List[List[int]] = [[math.comb(n, w) for w in range(n + 1)]]
    rhs: List[int] = [1]
    for j in range(t_lo, t_hi + 1):
        rows.append([kr[w][j] for w in range(n + 1)])
        rhs.append(0)
    objective = [2**n] + [0] * n
    problem = LpProblem.from_data(objective, rows, rhs)
    solution = lp_solve(problem)
    if solution.status != OPTIMAL:
        raise RuntimeError(f"reduced theta LP unexpectedly {solution.status}")
    ok = lp_verify_certificate(problem, solution)
    return _make_report(graph, solution.value, "reduced", True, (solution,), ok)


def theta_complement_lower(report: ThetaReport) -> Fraction:
    """Certified lower bound m^n / theta(G) on theta of the complement."""
    if not report.exact or not isinstance(report.theta, Fraction):
        raise ValueError("complement lower bound requires an exact theta")
    g = report.graph.group
    return Fraction(g.m**g.n) / report.theta


def kwise_max_zero_prob(n: int, k: int) -> Fraction:
    """Largest P(all zeros) over k-wise independent distributions on n bits.

    Dense exact LP: maximize P(0) subject to P >= 0, sum P = 1, and a
    vanishing spectrum on weights 1..k.  Scaled by 2^n this equals theta
    of the band-[1, k] graph.
    """
    check_guard("kwise dense n", n, KWISE_GUARD)
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    graph = CayleySpec(GroupSpec(2, n), 1, k)
    problem = _dense_problem_m2(graph, Fraction(1))
    solution = lp_solve(problem)
    if solution.status != OPTIMAL:
        raise RuntimeError(f"k-wise LP unexpectedly {solution.status}")
    if not lp_verify_certificate(problem, solution):
        raise RuntimeError("k-wise LP certificate failed to verify")
    return solution.value


def is_kwise_independent(p: GroupFunction, k: int) -> bool:
    """Spectral test: the transform vanishes on weights 1..k.

    Validates that p is a probability distribution first (nonnegative,
    summing to one) and raises otherwise; the test itself is exact in
    exact mode and tolerance-based in float mode.
    """
    tol = p.kind.tolerance
    if p.kind.exact:
        if any(v < 0 for v in p.values) or sum(p.values) != 1:
            raise ValueError("not a probability distribution")
    else:
        vals = np.asarray(p.values)
        if (vals.real < -tol).any() or np.abs(vals.imag).max(initial=0.0) > tol:
            raise ValueError("not a probability distribution")
        if abs(vals.sum() - 1.0) > tol:
            raise ValueError("not a probability distribution")
    if not 0 <= k <= p.spec.max_weight:
        raise ValueError(f"k must lie in 0..{p.spec.max_weight}, got {k}")
    spectrum = fourier_forward(p)
    weights = weights_by_rank(p.spec)
    if p.kind.exact:
        return all(
            spectrum.values[r] == 0
            for r in range(p.spec.order)
            if 1 <= weights[r] <= k
        )
    mask = (weights >= 1) & (weights <= k)
    return bool(np.abs(np.asarray(spectrum.values)[mask]).max(initial=0.0) <= tol)


def hypercontractivity_check(
    f: GroupFunction, p: float, q: float
) -> Tuple[bool, float]:
    """Check |f|_q <= ((q-1)/(p-1))^(d/2) |f|_p with d the polynomial degree.

    Returns the verdict together with the ratio lhs/rhs (0 for the zero
    map).  A falsification harness: the inequality must hold on every
    input, so a False verdict signals a bug upstream.
    """
    if f.spec.m != 2:
        raise ValueError("hypercontractivity check is wired for m = 2 only")
    if not (1 < p < q) or math.isinf(q):
        raise ValueError(f"need 1 < p < q < inf, got p={p} q={q}")
    degree = poly_degree(f)
    if degree < 0:
        return True, 0.0
    lhs = lp_norm(f, q)
    rhs = ((q - 1) / (p - 1)) ** (degree / 2) * lp_norm(f, p)
    if lhs == 0:
        return True, 0.0
    ratio = lhs / rhs
    return ratio <= 1.0 + 1e-12, ratio
