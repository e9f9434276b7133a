"""Symmetric orthogonal embeddings of the weight-band Cayley graphs.

A function f with f(0) = 1, vanishing on the connection set, and with
nonnegative real Fourier coefficients yields unit vectors
phi(g) = (sqrt(F(z)) chi_z(g)) over the spectrum support, whose inner
products depend only on the group difference: <phi(g), phi(h)> = f(g-h).
The achievable dimension is the spectrum support size, and a zero-count
bound on low-degree maps turns that into a matching lower bound, giving
the closed-form rank m^(n - d/(m-1)) for the threshold graphs.

``min_support_oracle`` is the independent referee: at tiny sizes it
enumerates every candidate spectrum support and solves the feasibility
LP, which is how the strict-versus-literal threshold question is settled
empirically rather than assumed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np

from .bochner import PsdVerdict, psd_via_fourier
from .cayley import CayleySpec, connection_ranks
from .group_core import (
    GroupFunction,
    GroupSpec,
    ScalarKind,
    Spectrum,
    char_column,
    char_eval,
    check_guard,
    fourier_forward,
    fourier_inverse,
    nonzero_count,
    poly_degree,
    sub_rank,
    unrank,
)
from .ratlp import OPTIMAL, LpProblem, lp_solve, lp_solve_float

__all__ = [
    "NotPsdError",
    "Embedding",
    "EmbeddingCheck",
    "SymRankReport",
    "build_witness",
    "embed_from_function",
    "verify_embedding",
    "symork_formula",
    "dlsz_floor",
    "dlsz_check",
    "min_support_oracle",
]

PAIRWISE_CHECK_LIMIT = 512
SAMPLED_PAIRS = 256
ORACLE_SPACE_GUARD = 512


class NotPsdError(ValueError):
    """Raised when an embedding is requested for a non-PSD source function."""

    def __init__(self, verdict: PsdVerdict):
        self.verdict = verdict
        super().__init__(f"source function is not normalized PSD: {verdict}")


@dataclass(frozen=True, eq=False)
class Embedding:
    """Unit-vector labelling of the group built from a PSD function.

    ``vectors`` has one row per element rank; columns follow ``support``
    (the spectrum ranks carrying nonzero coefficients).  ``source`` keeps
    the generating function so checks can run exactly when it is exact.
    """

    spec: GroupSpec
    dim: int
    vectors: np.ndarray
    source: GroupFunction
    support: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class EmbeddingCheck:
    """Verification outcome with the worst violation magnitude per property."""

    ok: bool
    unit_norms_ok: bool
    orthogonality_ok: bool
    translation_ok: bool
    worst_violation: float
    detail: str


@dataclass(frozen=True, eq=False)
class SymRankReport:
    """Certified ranks for one threshold graph under one convention."""

    m: int
    n: int
    d: int
    convention: str
    formula_value: int
    witness_dim: int
    dlsz_floor: int
    oracle_value: Optional[int]
    verified: bool


def symork_formula(m: int, n: int, d: int) -> int:
    """Closed-form symmetric rank m^(n - d/(m-1)) for divisible d."""
    if d % (m - 1) != 0:
        raise ValueError(f"d = {d} is not divisible by m - 1 = {m - 1}")
    if not 1 <= d <= (m - 1) * n:
        raise ValueError(f"d = {d} outside 1..{(m - 1) * n}")
    return m ** (n - d // (m - 1))


def build_witness(m: int, n: int, d: int) -> GroupFunction:
    """Indicator of 'first k coordinates zero' with k = n - d/(m-1).

    Vanishes wherever the weight exceeds d (it equals d exactly at the
    points with all later coordinates maximal, which is why the witness
    matches the strict threshold reading), and its spectrum is the
    uniform m^-k on the m^k characters supported on the first k
    coordinates.
    """
    if d % (m - 1) != 0:
        raise ValueError(f"d = {d} is not divisible by m - 1 = {m - 1}")
    if not 0 <= d <= (m - 1) * n:
        raise ValueError(f"d = {d} outside 0..{(m - 1) * n}")
    spec = GroupSpec(m, n)
    spec.check_dense()
    k = n - d // (m - 1)
    block = m**k
    values = [1 if (r % block) == 0 else 0 for r in range(spec.order)]
    kind = ScalarKind.exact_rational() if m == 2 else ScalarKind.complex_float()
    return GroupFunction.from_values(spec, values, kind)


def embed_from_function(f: GroupFunction) -> Embedding:
    """Vectors sqrt(F(z)) chi_z(g) over the spectrum support of f."""
    verdict = psd_via_fourier(f)
    if not (verdict.psd and verdict.normalized):
        raise NotPsdError(verdict)
    spec = f.spec
    spectrum = fourier_forward(f)
    tol = f.kind.tolerance
    if f.kind.exact:
        support = tuple(r for r, v in enumerate(spectrum.values) if v != 0)
        roots = [math.sqrt(float(spectrum.values[r])) for r in support]
    else:
        vals = np.asarray(spectrum.values)
        support = tuple(int(r) for r in np.flatnonzero(np.abs(vals) > tol))
        roots = [math.sqrt(max(float(vals[r].real), 0.0)) for r in support]
    vectors = np.empty((spec.order, len(support)), dtype=np.complex128)
    for col, (z, root) in enumerate(zip(support, roots)):
        vectors[:, col] = root * char_column(spec, z)
    vectors.setflags(write=False)
    return Embedding(spec, len(support), vectors, f, support)


def _exact_gram_by_difference(emb: Embedding) -> Tuple[Fraction, ...]:
    """Gram entries as a function of the difference, over the rationals."""
    spectrum = fourier_forward(emb.source)
    restricted = [Fraction(0)] * emb.spec.order
    for z in emb.support:
        restricted[z] = spectrum.values[z]
    sp = Spectrum(emb.spec, tuple(restricted), emb.source.kind)
    return fourier_inverse(sp).values


def verify_embedding(emb: Embedding, graph: CayleySpec) -> EmbeddingCheck:
    """Check unit norms, orthogonality on edges, and translation symmetry.

    Exact mode checks the Gram function of the difference exactly.  Float
    mode checks the difference function within tolerance and additionally
    spot-checks explicit vector inner products: full pairwise up to
    PAIRWISE_CHECK_LIMIT vertices, a deterministic sample beyond that.
    """
    if emb.spec != graph.group:
        raise ValueError("embedding and graph live on different groups")
    spec = emb.spec
    conn = connection_ranks(graph)

    if emb.source.kind.exact:
        gram = _exact_gram_by_difference(emb)
        unit_ok = gram[0] == 1
        worst_edge = max((abs(gram[s]) for s in conn), default=Fraction(0))
        orth_ok = worst_edge == 0
        worst = float(max(abs(gram[0] - 1), worst_edge))
        detail = "exact difference-function check"
        translation_ok = True  # character construction: Gram is a function of g - h
        ok = unit_ok and orth_ok
        return EmbeddingCheck(ok, unit_ok, orth_ok, translation_ok, worst, detail)

    tol = emb.source.kind.tolerance
    spectrum = np.asarray(fourier_forward(emb.source).values)
    restricted = np.zeros(spec.order, dtype=np.complex128)
    for z in emb.support:
        restricted[z] = spectrum[z]
    from .group_core import _dft_passes  # inverse resummation on the restricted spectrum

    gram = _dft_passes(restricted, spec.m, spec.n, forward=False)
    unit_dev = abs(gram[0] - 1.0)
    edge_dev = max((abs(gram[s]) for s in conn), default=0.0)

    if spec.order <= PAIRWISE_CHECK_LIMIT:
        pairs = itertools.product(range(spec.order), repeat=2)
    else:
        rng = np.random.RandomState(0xC0DE)
        pairs = zip(
            rng.randint(0, spec.order, SAMPLED_PAIRS),
            rng.randint(0, spec.order, SAMPLED_PAIRS),
        )
    trans_dev = 0.0
    v = emb.vectors
    for g, h in pairs:
        inner = complex(np.vdot(v[int(h)], v[int(g)]))  # conjugates the second argument
        trans_dev = max(trans_dev, abs(inner - gram[sub_rank(spec, int(g), int(h))]))

    unit_ok = unit_dev <= tol
    orth_ok = edge_dev <= tol
    translation_ok = trans_dev <= max(tol, 1e-9)
    worst = float(max(unit_dev, edge_dev, trans_dev))
    ok = unit_ok and orth_ok and translation_ok
    return EmbeddingCheck(
        ok, unit_ok, orth_ok, translation_ok, worst, "float difference + sampled pair check"
    )


def dlsz_floor(m: int, n: int, degree: int) -> int:
    """ceil(m^n / m^(degree/(m-1))): the zero-count floor for that degree."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    q = m - 1
    power = m ** (n * q - degree)
    root = _int_nth_root(power, q)
    if root**q < power:
        root += 1
    return root


def _int_nth_root(value: int, k: int) -> int:
    if k == 1:
        return value
    if value < 2:
        return value
    r = int(round(value ** (1.0 / k)))
    while r**k > value:
        r -= 1
    while (r + 1) ** k <= value:
        r += 1
    return r


def dlsz_check(f: GroupFunction) -> bool:
    """Zero-count harness: nonzeros of f must reach the degree floor.

    Must return True on every nonzero input; a False is a falsification
    of the build, not a property of f.
    """
    degree = poly_degree(f)
    if degree < 0:
        raise ValueError("dlsz_check needs a nonzero function")
    return nonzero_count(f) >= dlsz_floor(f.spec.m, f.spec.n, degree)


# --- brute-force oracle ------------------------------------------------------


def _support_feasible(graph: CayleySpec, support: Tuple[int, ...]) -> Optional[GroupFunction]:
    """Feasibility LP for spectrum coefficients on a fixed support.

    Seeks c >= 0 on the support with sum c = 1 and sum_z c_z chi_z(s) = 0
    for every connection element s; returns the function it certifies, or
    None.  Exact for m = 2; the float path (tolerance 1e-7) splits complex
    rows into real and imaginary parts.
    """
    spec = graph.group
    conn = connection_ranks(graph)
    k = len(support)
    if spec.m == 2:
        rows = [[Fraction(1)] * k]
        rhs = [Fraction(1)]
        for s in conn:
            rows.append([Fraction(1 - 2 * ((z & s).bit_count() & 1)) for z in support])
            rhs.append(Fraction(0))
        problem = LpProblem.from_data([Fraction(0)] * k, rows, rhs)
        solution = lp_solve(problem, float_assist=False)
        if solution.status != OPTIMAL:
            return None
        coeffs = [Fraction(0)] * spec.order
        for z, c in zip(support, solution.primal):
            coeffs[z] = c
        spectrum = Spectrum(spec, tuple(coeffs), ScalarKind.exact_rational())
        return fourier_inverse(spectrum)

    rows = [[1.0] * k]
    rhs = [1.0]
    for s in conn:
        sc = unrank(spec, s)
        chars = [char_eval(spec, unrank(spec, z), sc) for z in support]
        rows.append([c.real for c in chars])
        rhs.append(0.0)
        rows.append([c.imag for c in chars])
        rhs.append(0.0)
    problem = LpProblem.from_data([0.0] * k, rows, rhs)
    solution = lp_solve_float(problem, tol=1e-7)
    if solution.status != OPTIMAL:
        return None
    coeffs = np.zeros(spec.order, dtype=np.complex128)
    for z, c in zip(support, solution.primal):
        coeffs[z] = c
    spectrum = Spectrum(spec, coeffs, ScalarKind.complex_float(1e-7))
    return fourier_inverse(spectrum)


def min_support_oracle(
    graph: CayleySpec, with_witness: bool = False
) -> Union[int, Tuple[int, GroupFunction]]:
    """Smallest spectrum-support size admitting a feasible source function.

    Enumerates supports in increasing size (lexicographic within a size)
    and returns the first feasible size, which equals the symmetric rank
    of the graph.  Guarded to tiny groups: the subset space 2^(m^n) must
    stay within ORACLE_SPACE_GUARD.
    """
    spec = graph.group
    check_guard("oracle support-space 2^(m^n)", 2**spec.order, ORACLE_SPACE_GUARD)
    for size in range(1, spec.order + 1):
        for support in itertools.combinations(range(spec.order), size):
            witness = _support_feasible(graph, support)
            if witness is not None:
                return (size, witness) if with_witness else size
    raise RuntimeError("no feasible support found; the full spectrum should always work")
