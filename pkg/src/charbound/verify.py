"""Verification suites: every certified claim of the package, run as checks.

Each check returns a CheckResult; the CLI ``verify`` subcommand prints one
line per check and the acceptance test module asserts them at full size.
The ``smoke`` suite runs the same checks at reduced sizes and trial
counts.

All randomness is seeded and all checks are deterministic; the heavy
dense-versus-reduced sweep can fan out over processes (the instances are
pure and independent).
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .bochner import psd_direct, psd_via_fourier
from .cayley import CayleySpec, from_paper_params
from .embedding import (
    build_witness,
    dlsz_check,
    embed_from_function,
    min_support_oracle,
    symork_formula,
    verify_embedding,
)
from .group_core import (
    GroupFunction,
    GroupSpec,
    ScalarKind,
    Spectrum,
    fourier_inverse,
    weight_of_rank,
)
from .interp import default_set, rate_report, verify_interp_inequality
from .ratlp import LpProblem, lp_solve, lp_verify_certificate
from .theta import (
    hypercontractivity_check,
    is_kwise_independent,
    kwise_max_zero_prob,
    theta_dense,
    theta_reduced,
)

__all__ = ["CheckResult", "run_suite", "SUITE_NAMES", "CHECKS"]

SUITE_NAMES = ("smoke", "full")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(name: str, started: float, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, passed, detail, round(time.time() - started, 3))


# --- seeded corpora ----------------------------------------------------------


def _random_exact_function(rng: random.Random, spec: GroupSpec) -> GroupFunction:
    values = [Fraction(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(spec.order)]
    return GroupFunction.from_values(spec, values, ScalarKind.exact_rational())


def _random_float_function(rng: random.Random, spec: GroupSpec) -> GroupFunction:
    values = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(spec.order)]
    return GroupFunction.from_values(spec, values, ScalarKind.complex_float())


def _random_psd_function(rng: random.Random, spec: GroupSpec, exact: bool) -> GroupFunction:
    """Inverse transform of a random nonnegative spectrum summing to one."""
    if exact:
        raw = [Fraction(rng.randint(0, 6)) for _ in range(spec.order)]
        total = sum(raw) or Fraction(1)
        coeffs = tuple(v / total for v in raw)
        return fourier_inverse(Spectrum(spec, coeffs, ScalarKind.exact_rational()))
    raw = [rng.uniform(0, 1) for _ in range(spec.order)]
    total = sum(raw)
    coeffs = [v / total for v in raw]
    return fourier_inverse(Spectrum.from_values(spec, coeffs, ScalarKind.complex_float()))


def _random_sparse_spectrum(rng: random.Random, spec: GroupSpec, exact: bool) -> GroupFunction:
    size = rng.randint(1, max(1, spec.order // 2))
    support = rng.sample(range(spec.order), size)
    if exact:
        coeffs = [Fraction(0)] * spec.order
        for z in support:
            coeffs[z] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        return fourier_inverse(Spectrum(spec, tuple(coeffs), ScalarKind.exact_rational()))
    coeffs = [0j] * spec.order
    for z in support:
        coeffs[z] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return fourier_inverse(Spectrum.from_values(spec, coeffs, ScalarKind.complex_float()))


def _random_low_degree(rng: random.Random, spec: GroupSpec, max_degree: int) -> GroupFunction:
    coeffs = [Fraction(0)] * spec.order
    low = [r for r in range(spec.order) if weight_of_rank(spec, r) <= max_degree]
    for z in rng.sample(low, min(len(low), rng.randint(1, 6))):
        coeffs[z] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
    return fourier_inverse(Spectrum(spec, tuple(coeffs), ScalarKind.exact_rational()))


# --- checks ------------------------------------------------------------------


def check_theorem1_oracle(full: bool, seed: int = 0) -> CheckResult:
    """Oracle equals the closed-form rank under the strict reading; the
    literal reading's values are documented alongside."""
    t0 = time.time()
    cases = [(2, n, d) for n in (2, 3) for d in range(1, n + 1)]
    cases += [(3, 2, 2), (3, 2, 4)]
    failures = []
    notes = []
    for m, n, d in cases:
        strict = from_paper_params(m, n, d, "strict")
        got, witness = min_support_oracle(strict, with_witness=True)
        want = symork_formula(m, n, d)
        if got != want:
            failures.append(f"strict m={m} n={n} d={d}: oracle {got} != formula {want}")
        if not dlsz_check(witness):
            failures.append(f"oracle witness at m={m} n={n} d={d} violates the zero-count floor")
        literal_graph = from_paper_params(m, n, d, "literal")
        lit = min_support_oracle(literal_graph)
        notes.append(f"(m={m},n={n},d={d}): strict={got} literal={lit}")
    detail = "; ".join(failures) if failures else "literal documentation: " + ", ".join(notes)
    return _result("theorem1_oracle", t0, not failures, detail)


def check_witness_validity(full: bool, seed: int = 0) -> CheckResult:
    """Witness embedding verifies against the strict graph at formula dimension."""
    t0 = time.time()
    max_order = 4096 if full else 256
    failures = []
    count = 0
    for m in (2, 3):
        n = 1
        while m**n <= max_order:
            step = m - 1
            for d in range(step, (m - 1) * n + 1, step):
                emb = embed_from_function(build_witness(m, n, d))
                want = symork_formula(m, n, d)
                graph = from_paper_params(m, n, d, "strict")
                chk = verify_embedding(emb, graph)
                count += 1
                if emb.dim != want:
                    failures.append(f"m={m} n={n} d={d}: dim {emb.dim} != {want}")
                if not chk.ok:
                    failures.append(f"m={m} n={n} d={d}: verify failed ({chk.detail})")
            n += 1
    detail = "; ".join(failures) if failures else f"{count} witness embeddings verified"
    return _result("witness_validity", t0, not failures, detail)


def check_bochner_equivalence(full: bool, seed: int = 0) -> CheckResult:
    """psd_direct and psd_via_fourier agree on the randomized corpus."""
    t0 = time.time()
    trials = 200 if full else 60
    rng = random.Random(seed or 20240801)
    sizes_exact = [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6)]
    sizes_float = [(3, 1), (3, 2), (3, 3), (3, 4)]
    disagreements = []
    psd_seen = 0
    for trial in range(trials):
        if trial % 2 == 0:
            m, n = sizes_exact[trial // 2 % len(sizes_exact)]
            spec = GroupSpec(m, n)
            f = (
                _random_exact_function(rng, spec)
                if trial % 4 == 0
                else _random_psd_function(rng, spec, exact=True)
            )
        else:
            m, n = sizes_float[trial // 2 % len(sizes_float)]
            spec = GroupSpec(m, n)
            f = (
                _random_float_function(rng, spec)
                if trial % 4 == 1
                else _random_psd_function(rng, spec, exact=False)
            )
        via_fourier = psd_via_fourier(f)
        direct = psd_direct(f)
        psd_seen += int(via_fourier.psd)
        if via_fourier.psd != direct.psd or via_fourier.normalized != direct.normalized:
            disagreements.append(
                f"trial {trial} (m={spec.m}, n={spec.n}): "
                f"fourier=({via_fourier.psd},{via_fourier.normalized}) "
                f"direct=({direct.psd},{direct.normalized})"
            )
    detail = (
        "; ".join(disagreements)
        if disagreements
        else f"{trials} trials, {psd_seen} PSD instances, zero disagreements"
    )
    return _result("bochner_equivalence", t0, not disagreements, detail)


def check_dlsz_harness(full: bool, seed: int = 0) -> CheckResult:
    """Zero-count floor holds on random sparse spectra and all 1/2-character spectra."""
    t0 = time.time()
    trials = 1000 if full else 250
    rng = random.Random(seed or 31337)
    failures = 0
    checked = 0
    sizes = [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)]
    for trial in range(trials):
        m, n = sizes[trial % len(sizes)]
        f = _random_sparse_spectrum(rng, GroupSpec(m, n), exact=(m == 2))
        try:
            ok = dlsz_check(f)
        except ValueError:
            continue  # the zero function: sparse draw collapsed
        checked += 1
        failures += int(not ok)
    for m, n in ((2, 2), (2, 3), (3, 1), (3, 2)):
        spec = GroupSpec(m, n)
        exact = m == 2
        for z1 in range(spec.order):
            for z2 in range(z1, spec.order):
                if exact:
                    coeffs = [Fraction(0)] * spec.order
                    coeffs[z1] += Fraction(1)
                    coeffs[z2] += Fraction(1, 2)
                    f = fourier_inverse(Spectrum(spec, tuple(coeffs), ScalarKind.exact_rational()))
                else:
                    coeffs = [0j] * spec.order
                    coeffs[z1] += 1.0
                    coeffs[z2] += 0.5
                    f = fourier_inverse(
                        Spectrum.from_values(spec, coeffs, ScalarKind.complex_float())
                    )
                checked += 1
                failures += int(not dlsz_check(f))
    detail = f"{checked} functions checked, {failures} floor violations"
    return _result("dlsz_harness", t0, failures == 0, detail)


def _reduction_case(args: Tuple[int, int, int]) -> Tuple[int, int, int, str, str, bool, bool]:
    n, lo, hi = args
    graph = CayleySpec(GroupSpec(2, n), lo, hi)
    dense = theta_dense(graph)
    reduced = theta_reduced(n, lo, hi)
    return (
        n,
        lo,
        hi,
        str(dense.theta),
        str(reduced.theta),
        bool(dense.certificate_ok),
        bool(reduced.certificate_ok),
    )


def check_reduction_exactness(full: bool, seed: int = 0, jobs: Optional[int] = None) -> CheckResult:
    """theta_dense equals theta_reduced as exact rationals on every band."""
    t0 = time.time()
    n_max = 8 if full else 5
    cases = []
    for n in range(1, n_max + 1):
        for lo in range(1, n + 1):
            for hi in range(lo, n + 1):
                cases.append((n, lo, hi))
        cases.append((n, n + 1, n))  # the empty band
    if jobs is None:
        jobs = min(2, os.cpu_count() or 1)
    if jobs > 1 and len(cases) > 8:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_reduction_case, cases, chunksize=4))
    else:
        rows = [_reduction_case(c) for c in cases]
    mismatches = [
        f"n={n} band=[{lo},{hi}]: dense {d} != reduced {r}"
        for n, lo, hi, d, r, okd, okr in rows
        if d != r
    ]
    bad_certs = [
        f"n={n} band=[{lo},{hi}] certificate failure"
        for n, lo, hi, d, r, okd, okr in rows
        if not (okd and okr)
    ]
    problems = mismatches + bad_certs
    detail = "; ".join(problems) if problems else f"{len(rows)} bands, dense == reduced exactly"
    return _result("reduction_exactness", t0, not problems, detail)


def check_theta_anchors(full: bool, seed: int = 0) -> CheckResult:
    """Known values, the product inequality, band monotonicity, and the
    rank-cap sandwich across the upper-tail family."""
    t0 = time.time()
    n_max = 8 if full else 5
    failures = []
    equalities = 0
    pairs = 0
    for n in range(1, n_max + 1):
        if theta_reduced(n, 1, n).theta != 1:
            failures.append(f"complete graph n={n}: theta != 1")
        if theta_reduced(n, n + 1, n).theta != 2**n:
            failures.append(f"empty graph n={n}: theta != 2^{n}")
        prev = None
        for t_lo in range(1, n + 2):
            g_theta = theta_reduced(n, t_lo, n).theta
            comp_theta = theta_reduced(n, 1, t_lo - 1).theta
            pairs += 1
            if g_theta * comp_theta < 2**n:
                failures.append(f"n={n} t_lo={t_lo}: product {g_theta * comp_theta} < 2^{n}")
            elif g_theta * comp_theta == 2**n:
                equalities += 1
            if prev is not None and g_theta < prev:
                failures.append(f"n={n}: theta dropped as the band shrank at t_lo={t_lo}")
            prev = g_theta
            d_strict = t_lo - 1
            if 1 <= d_strict <= n and comp_theta > symork_formula(2, n, d_strict):
                failures.append(
                    f"n={n} d={d_strict}: complement theta {comp_theta} exceeds the rank cap"
                )
    if theta_reduced(2, 2, 2).theta != 2:
        failures.append("n=2 t_lo=2: theta != 2")
    detail = (
        "; ".join(failures)
        if failures
        else f"anchors, monotonicity, sandwich hold; product equality on {equalities}/{pairs} pairs"
    )
    return _result("theta_anchors", t0, not failures, detail)


RATE_GRID = (8, 16, 24, 32, 40, 48, 56, 64)


def rate_track_rows(grid: Sequence[int] = RATE_GRID) -> List[Dict[str, object]]:
    """Certified complement bounds for the half-threshold graphs on the grid."""
    rows = []
    for n in grid:
        graph = from_paper_params(2, n, n // 2, "literal")
        rep = theta_reduced(n, graph.t_lo, graph.t_hi, graph=graph)
        comp = rep.complement_lower_log2
        rows.append(
            {
                "n": n,
                "theta": rep.theta,
                "log2_theta": rep.log2_theta,
                "complement_lower_log2": comp,
                "rate": comp / n,
                "remark_line": 0.0435 * n - math.log2(2.5),
                "cap_log2": n / 2,
                "certificate_ok": rep.certificate_ok,
            }
        )
    return rows


def check_rate_track_bounds(full: bool, seed: int = 0) -> CheckResult:
    """Complement bound clears the claimed exponential line and the rank cap."""
    t0 = time.time()
    rows = rate_track_rows()
    failures = []
    for row in rows:
        if not row["certificate_ok"]:
            failures.append(f"n={row['n']}: certificate failed")
        if row["complement_lower_log2"] < row["remark_line"]:
            failures.append(
                f"n={row['n']}: complement bound {row['complement_lower_log2']:.4f} "
                f"below the line {row['remark_line']:.4f}"
            )
        if row["complement_lower_log2"] > row["cap_log2"] + 1e-12:
            failures.append(
                f"n={row['n']}: complement bound {row['complement_lower_log2']:.4f} "
                f"exceeds the rank cap {row['cap_log2']:.1f}"
            )
    detail = (
        "; ".join(failures)
        if failures
        else "line and cap hold on the whole grid: "
        + ", ".join(f"n={r['n']}: {r['complement_lower_log2']:.3f}" for r in rows)
    )
    return _result("rate_track_bounds", t0, not failures, detail)


def check_rate_track_monotonicity(full: bool, seed: int = 0) -> CheckResult:
    """Stated expectation: per-n rate non-decreasing and below 0.25.

    The certified values refute this expectation: the rate sequence
    starts at exactly 0.5 (n = 8, where theta of both the graph and its
    complement is 16) and decreases toward the known asymptotic regime.
    The check is implemented as stated and reports the true sequence; see
    the repository notes for the analysis.
    """
    t0 = time.time()
    rows = rate_track_rows()
    rates = [row["rate"] for row in rows]
    non_decreasing = all(b >= a - 1e-12 for a, b in zip(rates, rates[1:]))
    below_quarter = all(r < 0.25 for r in rates)
    passed = non_decreasing and below_quarter
    seq = ", ".join(f"{r:.4f}" for r in rates)
    detail = (
        f"rate sequence [{seq}]: non_decreasing={non_decreasing}, below_0.25={below_quarter}"
    )
    return _result("rate_track_monotonicity", t0, passed, detail)


def check_interp_certificates(full: bool, seed: int = 0) -> CheckResult:
    """Geometric cap, random-polynomial soundness, and consistency with theta."""
    t0 = time.time()
    failures = []
    for n in range(8, 136, 8):
        rep = rate_report(n)
        if not rep.within_cap:
            failures.append(f"n={n}: bound {rep.bound} above the geometric cap")
    rng = random.Random(seed or 777)
    trials = 500 if full else 100
    for n in (8, 16):
        node_set = default_set(n)
        degree_cap = len(node_set.points)
        for _ in range(trials):
            degree = rng.randint(0, degree_cap - 1)
            coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(degree + 1)]
            if not verify_interp_inequality(coeffs, n, node_set):
                failures.append(f"n={n}: inequality failed on {coeffs}")
                break
    for n in (8, 16, 24):
        graph = from_paper_params(2, n, n // 2, "literal")
        theta_val = theta_reduced(n, graph.t_lo, graph.t_hi).theta
        upper = rate_report(n).theta_upper
        if theta_val > upper:
            failures.append(f"n={n}: theta {theta_val} exceeds the certificate cap {upper}")
    detail = "; ".join(failures) if failures else "caps, random polynomials, and theta consistency hold"
    return _result("interp_certificates", t0, not failures, detail)


def check_kwise_identity(full: bool, seed: int = 0) -> CheckResult:
    """2^n * max P(all zeros) equals theta of the band-[1,k] graph exactly."""
    t0 = time.time()
    n_max = 8 if full else 5
    failures = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            prob = kwise_max_zero_prob(n, k)
            band_theta = theta_reduced(n, 1, k).theta
            if prob * 2**n != band_theta:
                failures.append(f"n={n} k={k}: {prob} * 2^{n} != {band_theta}")
    if kwise_max_zero_prob(2, 1) != Fraction(1, 2):
        failures.append("spot value n=2 k=1 != 1/2")
    # The extremal distribution for n=2, k=1 in function form.
    spot = GroupFunction.from_values(
        GroupSpec(2, 2), [Fraction(1, 2), 0, 0, Fraction(1, 2)], ScalarKind.exact_rational()
    )
    if not is_kwise_independent(spot, 1) or is_kwise_independent(spot, 2):
        failures.append("half-half distribution misclassified")
    detail = "; ".join(failures) if failures else "identity exact on the full grid"
    return _result("kwise_identity", t0, not failures, detail)


def check_hypercontractivity(full: bool, seed: int = 0) -> CheckResult:
    """Norm-growth inequality holds on random low-degree functions."""
    t0 = time.time()
    trials = 200 if full else 60
    rng = random.Random(seed or 424242)
    failures = 0
    worst = 0.0
    for trial in range(trials):
        n = 4 + trial % 9  # n up to 12
        f = _random_low_degree(rng, GroupSpec(2, n), max_degree=3)
        ok, ratio = hypercontractivity_check(f, 2.0, 4.0)
        worst = max(worst, ratio)
        failures += int(not ok)
    detail = f"{trials} functions, worst ratio {worst:.6f}, {failures} violations"
    return _result("hypercontractivity", t0, failures == 0, detail)


def check_certificates_determinism(full: bool, seed: int = 0) -> CheckResult:
    """Exact LP certificates verify and identical solves are bit-identical."""
    t0 = time.time()
    failures = []
    graph = CayleySpec(GroupSpec(2, 4), 2, 4)
    for rep in (theta_dense(graph), theta_reduced(4, 2, 4)):
        if not rep.certificate_ok:
            failures.append(f"{rep.method} certificate failed")
    problem = LpProblem.from_data(
        [Fraction(3, 4), -150, Fraction(1, 50), -6, 0, 0, 0],
        [
            [Fraction(1, 4), -60, Fraction(-1, 25), 9, 1, 0, 0],
            [Fraction(1, 2), -90, Fraction(-1, 50), 3, 0, 1, 0],
            [0, 0, 1, 0, 0, 0, 1],
        ],
        [0, 0, 1],
    )
    first = lp_solve(problem)
    second = lp_solve(problem)
    if first.value != Fraction(1, 20):
        failures.append(f"cycling instance optimum {first.value} != 1/20")
    if (first.value, first.primal, first.dual) != (second.value, second.primal, second.dual):
        failures.append("repeated solves differ")
    if not lp_verify_certificate(problem, first):
        failures.append("cycling instance certificate failed")
    detail = "; ".join(failures) if failures else "certificates verify; repeated solves identical"
    return _result("certificates_determinism", t0, not failures, detail)


CHECKS: Tuple[Tuple[str, Callable[..., CheckResult]], ...] = (
    ("theorem1_oracle", check_theorem1_oracle),
    ("witness_validity", check_witness_validity),
    ("bochner_equivalence", check_bochner_equivalence),
    ("dlsz_harness", check_dlsz_harness),
    ("reduction_exactness", check_reduction_exactness),
    ("theta_anchors", check_theta_anchors),
    ("rate_track_bounds", check_rate_track_bounds),
    ("rate_track_monotonicity", check_rate_track_monotonicity),
    ("interp_certificates", check_interp_certificates),
    ("kwise_identity", check_kwise_identity),
    ("hypercontractivity", check_hypercontractivity),
    ("certificates_determinism", check_certificates_determinism),
)


def run_suite(
    suite: str = "smoke", seed: int = 0, only: Optional[Iterable[str]] = None
) -> List[CheckResult]:
    if suite not in SUITE_NAMES:
        raise ValueError(f"suite must be one of {SUITE_NAMES}, got {suite!r}")
    full = suite == "full"
    wanted = set(only) if only else None
    results = []
    for name, fn in CHECKS:
        if wanted is not None and name not in wanted:
            continue
        results.append(fn(full, seed))
    return results
