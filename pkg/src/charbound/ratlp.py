"""Exact dense linear programming with verified certificates.

Problems are stated in standard form: maximize c.v subject to A.v = b and
v >= 0, with every entry an exact rational.  ``lp_solve`` returns exact
optimal primal and dual vectors forming a strong-duality certificate that
``lp_verify_certificate`` re-checks in exact arithmetic with no reference
to solver state.

Two engines cooperate:

* a double-precision tableau simplex proposes an optimal basis quickly;
  the basis is then certified exactly (basic solution, duals, and every
  reduced cost recomputed over the rationals).  Nothing from the float
  run is trusted beyond the basis guess.
* a pure exact two-phase primal simplex with Bland's anti-cycling rule
  (lowest-index pivots, deterministic) is the fallback and the reference
  path; it is always used when the float guess fails certification.

The totally degenerate character LPs in this package stall Bland's rule
for tens of thousands of pivots, so the float-guided path is what keeps
the exact sweeps inside their time budgets.

``lp_solve_float`` exposes the double-precision engine directly for the
float-only oracles (m >= 3); its results never feed certified reports.

Internally the exact paths use gmpy2 rationals when available (a drop-in,
C-accelerated stand-in for fractions.Fraction); the public API always
speaks Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .group_core import check_guard

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    _Q = Fraction

__all__ = [
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "LpProblem",
    "LpSolution",
    "lp_solve",
    "lp_verify_certificate",
    "lp_solve_float",
]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
_STALLED = "stalled"

LP_SIZE_GUARD = 4096


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(v.numerator, v.denominator) if hasattr(v, "numerator") else Fraction(v)


@dataclass(frozen=True, eq=False)
class LpProblem:
    """maximize objective . v  subject to  rows . v = rhs,  v >= 0."""

    objective: Tuple[Fraction, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]

    @classmethod
    def from_data(cls, objective: Sequence, rows: Sequence[Sequence], rhs: Sequence) -> "LpProblem":
        obj = tuple(_as_fraction(v) for v in objective)
        mat = tuple(tuple(_as_fraction(v) for v in row) for row in rows)
        b = tuple(_as_fraction(v) for v in rhs)
        if len(mat) != len(b):
            raise ValueError(f"{len(mat)} rows but {len(b)} right-hand sides")
        for i, row in enumerate(mat):
            if len(row) != len(obj):
                raise ValueError(f"row {i} has {len(row)} entries, objective has {len(obj)}")
        return cls(obj, mat, b)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.objective)


@dataclass(frozen=True, eq=False)
class LpSolution:
    """Solver outcome; primal/dual certificates accompany status "optimal".

    ``basis`` records the optimal basis column indices (entries >= ncols
    denote the identity column of that row, from a degenerate artificial).
    """

    status: str
    value: Optional[Fraction] = None
    primal: Optional[Tuple[Fraction, ...]] = None
    dual: Optional[Tuple[Fraction, ...]] = None
    basis: Optional[Tuple[int, ...]] = None


def lp_solve(problem: LpProblem, float_assist: bool = True) -> LpSolution:
    """Solve exactly; see the module docstring for the two-engine design."""
    nrows, ncols = problem.nrows, problem.ncols
    check_guard("lp rows+cols", nrows + ncols, LP_SIZE_GUARD)
    if nrows == 0:
        if any(c > 0 for c in problem.objective):
            return LpSolution(UNBOUNDED)
        return LpSolution(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(ncols)), (), ())

    if float_assist:
        # Perturbing the right-hand side breaks the degenerate treadmills
        # these character LPs trigger; the basis found is then certified
        # exactly against the unperturbed problem, so the perturbation can
        # never leak into results.
        for eps in (1e-7, 1e-5, 0.0):
            guess = _float_simplex(problem, perturb=eps)
            if guess.status == OPTIMAL and guess.basis is not None:
                certified = _certify_basis(problem, guess.basis)
                if certified is not None:
                    return certified
    return _exact_simplex(problem)


def lp_verify_certificate(problem: LpProblem, solution: LpSolution) -> bool:
    """Re-check optimality in exact arithmetic, independent of the solver.

    Requires primal feasibility (A.x = b, x >= 0), dual feasibility
    (A^T.y >= c), and the zero duality gap c.x = b.y = value.
    """
    if solution.status != OPTIMAL:
        return False
    x, y = solution.primal, solution.dual
    if x is None or y is None or solution.value is None:
        return False
    if len(x) != problem.ncols or len(y) != problem.nrows:
        return False
    if any(v < 0 for v in x):
        return False
    for row, b in zip(problem.rows, problem.rhs):
        if sum(a * v for a, v in zip(row, x)) != b:
            return False
    for j in range(problem.ncols):
        if sum(problem.rows[i][j] * y[i] for i in range(problem.nrows)) < problem.objective[j]:
            return False
    if sum(c * v for c, v in zip(problem.objective, x)) != solution.value:
        return False
    if sum(b * u for b, u in zip(problem.rhs, y)) != solution.value:
        return False
    return True


# --- exact basis certification ----------------------------------------------


def _certify_basis(problem: LpProblem, basis: Sequence[int]) -> Optional[LpSolution]:
    """Exactly validate a candidate optimal basis; None when it fails.

    Solves B.x_B = b and reads the duals from B^-1 in one rational
    elimination, then checks x_B >= 0, zero-valued artificial positions,
    and nonpositive reduced costs for every column.
    """
    nrows, ncols = problem.nrows, problem.ncols
    if len(basis) != nrows or len(set(basis)) != nrows:
        return None

    cols = []
    for j in basis:
        if j < ncols:
            cols.append([_Q(problem.rows[i][j].numerator, problem.rows[i][j].denominator)
                         for i in range(nrows)])
        else:
            unit = [_Q(0)] * nrows
            unit[j - ncols] = _Q(1)
            cols.append(unit)

    zero = _Q(0)
    # Augmented rows [B | b | I], eliminated in place to [I | x_B | B^-1].
    aug = []
    for i in range(nrows):
        row = [cols[k][i] for k in range(nrows)]
        row.append(_Q(problem.rhs[i].numerator, problem.rhs[i].denominator))
        row.extend(_Q(1) if k == i else zero for k in range(nrows))
        aug.append(row)

    width = 2 * nrows + 1
    for col in range(nrows):
        piv_row = next((r for r in range(col, nrows) if aug[r][col]), -1)
        if piv_row < 0:
            return None  # singular basis
        if piv_row != col:
            aug[col], aug[piv_row] = aug[piv_row], aug[col]
        prow = aug[col]
        piv = prow[col]
        if piv != 1:
            inv = 1 / piv
            prow = [v * inv for v in prow]
            aug[col] = prow
        for r in range(nrows):
            if r != col:
                f = aug[r][col]
                if f:
                    aug[r] = [a - f * b for a, b in zip(aug[r], prow)]

    xb = [aug[i][nrows] for i in range(nrows)]
    if any(v < 0 for v in xb):
        return None
    for k, j in enumerate(basis):
        if j >= ncols and xb[k] != 0:
            return None  # identity stand-in carrying flow: not a solution of A.v = b

    cost = [_Q(c.numerator, c.denominator) for c in problem.objective]
    cb = [cost[j] if j < ncols else zero for j in basis]
    dual = [zero] * nrows
    for i in range(nrows):
        ci = cb[i]
        if ci:
            row = aug[i]
            for k in range(nrows):
                v = row[nrows + 1 + k]
                if v:
                    dual[k] += ci * v

    # Dual feasibility: every reduced cost c_j - y.A_j must be <= 0.
    for j in range(ncols):
        rc = cost[j]
        for i in range(nrows):
            a = problem.rows[i][j]
            if a:
                rc -= dual[i] * _Q(a.numerator, a.denominator)
        if rc > 0:
            return None

    primal = [Fraction(0)] * ncols
    value = _Q(0)
    for k, j in enumerate(basis):
        if j < ncols:
            primal[j] = Fraction(xb[k].numerator, xb[k].denominator)
            value += cb[k] * xb[k]
    return LpSolution(
        OPTIMAL,
        Fraction(value.numerator, value.denominator),
        tuple(primal),
        tuple(Fraction(y.numerator, y.denominator) for y in dual),
        tuple(int(j) for j in basis),
    )


# --- pure exact simplex ------------------------------------------------------


def _pivot(tableau: List[list], red: list, basis: List[int], prow: int, pcol: int) -> None:
    row = tableau[prow]
    piv = row[pcol]
    if piv != 1:
        inv = 1 / piv
        row = [v * inv for v in row]
        tableau[prow] = row
    for i, other in enumerate(tableau):
        if i != prow:
            f = other[pcol]
            if f:
                tableau[i] = [a - f * b for a, b in zip(other, row)]
    f = red[pcol]
    if f:
        red[:] = [a - f * b for a, b in zip(red, row)]
    basis[prow] = pcol


def _bland(tableau: List[list], red: list, basis: List[int], allowed: int) -> str:
    """Simplex iterations to optimality; Bland's rule, lowest-index ties."""
    nrows = len(tableau)
    while True:
        pcol = -1
        in_basis = set(basis)
        for j in range(allowed):
            if red[j] > 0 and j not in in_basis:
                pcol = j
                break
        if pcol < 0:
            return OPTIMAL
        prow = -1
        best = None
        best_var = -1
        for i in range(nrows):
            a = tableau[i][pcol]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < best_var):
                    best = ratio
                    prow = i
                    best_var = basis[i]
        if prow < 0:
            return UNBOUNDED
        _pivot(tableau, red, basis, prow, pcol)


def _exact_simplex(problem: LpProblem) -> LpSolution:
    """Two-phase exact primal simplex under Bland's rule.

    Phase I drives artificial variables to zero (infeasible when it
    cannot); redundant rows keep their artificial basic at level zero and
    are barred from re-entering.  The dual vector is read off the reduced
    costs at the artificial columns of the optimal tableau.
    """
    nrows, ncols = problem.nrows, problem.ncols
    zero = _Q(0)
    tableau: List[list] = []
    flip = [False] * nrows
    for i in range(nrows):
        b = problem.rhs[i]
        neg = b < 0
        flip[i] = neg
        row = [_Q(-a.numerator, a.denominator) if neg else _Q(a.numerator, a.denominator)
               for a in problem.rows[i]]
        row.extend(_Q(1) if k == i else zero for k in range(nrows))
        row.append(_Q(-b.numerator, b.denominator) if neg else _Q(b.numerator, b.denominator))
        tableau.append(row)

    total = ncols + nrows
    basis = [ncols + i for i in range(nrows)]

    # Phase I: maximize minus the artificial sum; the reduced costs over
    # the original columns start as the tableau column sums.
    red = [zero] * (total + 1)
    for row in tableau:
        red = [a + b for a, b in zip(red, row)]
    for k in range(ncols, total):
        red[k] = zero

    _bland(tableau, red, basis, allowed=ncols)
    if red[-1] != 0:
        return LpSolution(INFEASIBLE)

    for i in range(nrows):
        if basis[i] >= ncols:
            row = tableau[i]
            pcol = next((j for j in range(ncols) if row[j]), -1)
            if pcol >= 0:
                _pivot(tableau, red, basis, i, pcol)

    # Phase II.
    cost = [_Q(c.numerator, c.denominator) for c in problem.objective]
    red = cost + [zero] * (nrows + 1)
    for i in range(nrows):
        bi = basis[i]
        cb = cost[bi] if bi < ncols else zero
        if cb:
            red = [a - cb * b for a, b in zip(red, tableau[i])]
    status = _bland(tableau, red, basis, allowed=ncols)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED)

    primal = [Fraction(0)] * ncols
    for i, bi in enumerate(basis):
        if bi < ncols:
            v = tableau[i][-1]
            primal[bi] = Fraction(v.numerator, v.denominator)
    value = -red[-1]
    dual = []
    for i in range(nrows):
        y = -red[ncols + i]
        if flip[i]:
            y = -y
        dual.append(Fraction(y.numerator, y.denominator))
    return LpSolution(
        OPTIMAL,
        Fraction(value.numerator, value.denominator),
        tuple(primal),
        tuple(dual),
        tuple(int(b) for b in basis),
    )


# --- float engine ------------------------------------------------------------


def _float_simplex(problem: LpProblem, tol: float = 1e-9, perturb: float = 0.0) -> LpSolution:
    """Double-precision two-phase simplex used as a basis oracle.

    Dantzig pricing with a Bland fallback after long degenerate streaks;
    iteration-capped.  ``perturb`` adds a deterministic pseudo-random
    jiggle to the right-hand side, which removes the degeneracy that
    otherwise stalls pivoting.  Deterministic for fixed input.
    """
    nrows, ncols = problem.nrows, problem.ncols
    a = np.array([[float(v) for v in row] for row in problem.rows], dtype=float)
    b = np.array([float(v) for v in problem.rhs], dtype=float)
    c = np.array([float(v) for v in problem.objective], dtype=float)

    if perturb:
        scale = max(1.0, float(np.abs(b).max()))
        noise = np.random.RandomState(0x5EED).uniform(1.0, 2.0, nrows)
        b = b + perturb * scale * noise

    neg = b < 0
    a[neg] *= -1.0
    b[neg] *= -1.0
    ext = np.hstack([a, np.eye(nrows), b[:, None]])
    tableau = ext.copy()
    basis = list(range(ncols, ncols + nrows))
    total = ncols + nrows
    cap = 20000 + 100 * nrows
    piv_tol = 1e-7

    def refactor() -> bool:
        """Recompute the tableau from the basis, curbing pivot drift."""
        nonlocal tableau
        bmat = ext[:, basis]
        try:
            tableau = np.linalg.solve(bmat, ext)
        except np.linalg.LinAlgError:
            return False
        return True

    def run(cost: np.ndarray, allowed: int) -> str:
        nonlocal tableau
        iters = 0
        streak = 0
        since_refactor = 0
        red = np.empty(total + 1)

        def reprice() -> None:
            red[:] = 0.0
            red[:total] = cost[:total]
            cb = cost[basis]
            red[:] -= cb @ tableau

        reprice()
        while True:
            iters += 1
            since_refactor += 1
            if iters > cap:
                return _STALLED
            if since_refactor >= 120:
                if not refactor():
                    return _STALLED
                reprice()
                since_refactor = 0
            in_basis = set(basis)
            pcol = -1
            if streak < 40:
                best_rc = piv_tol
                for j in range(allowed):
                    rc = red[j]
                    if rc > best_rc and j not in in_basis:
                        best_rc = rc
                        pcol = j
            else:
                for j in range(allowed):
                    if red[j] > piv_tol and j not in in_basis:
                        pcol = j
                        break
            if pcol < 0:
                return OPTIMAL
            col = tableau[:, pcol]
            pos = col > piv_tol
            if not pos.any():
                return UNBOUNDED
            ratios = np.where(pos, tableau[:, -1] / np.where(pos, col, 1.0), np.inf)
            best = ratios.min()
            tied = np.flatnonzero(ratios <= best + tol)
            # Stability first (largest pivot), then lowest basis index.
            prow = int(min(tied, key=lambda i: (-col[i], basis[i])))
            degen = tableau[prow, -1] <= tol
            tableau[prow] /= tableau[prow, pcol]
            colv = tableau[:, pcol].copy()
            colv[prow] = 0.0
            tableau[:] -= np.outer(colv, tableau[prow])
            red[:] -= red[pcol] * tableau[prow]
            basis[prow] = pcol
            streak = streak + 1 if degen else 0

    phase1_cost = np.zeros(total + 1)
    phase1_cost[ncols:total] = -1.0
    status = run(phase1_cost, allowed=ncols)
    if status == _STALLED:
        return LpSolution(_STALLED)
    artificial_level = sum(tableau[i, -1] for i in range(nrows) if basis[i] >= ncols)
    if artificial_level > 1e-7:
        return LpSolution(INFEASIBLE)
    for i in range(nrows):
        if basis[i] >= ncols:
            cand = np.flatnonzero(np.abs(tableau[i, :ncols]) > piv_tol)
            if cand.size:
                pcol = int(cand[0])
                tableau[i] /= tableau[i, pcol]
                colv = tableau[:, pcol].copy()
                colv[i] = 0.0
                tableau[:] -= np.outer(colv, tableau[i])
                basis[i] = pcol

    phase2_cost = np.zeros(total + 1)
    phase2_cost[:ncols] = c
    status = run(phase2_cost, allowed=ncols)
    if status != OPTIMAL:
        return LpSolution(status)
    if not refactor():
        return LpSolution(_STALLED)
    primal = np.zeros(ncols)
    value = 0.0
    for i, bi in enumerate(basis):
        if bi < ncols:
            primal[bi] = tableau[i, -1]
            value += c[bi] * tableau[i, -1]
    bmat = ext[:, basis]
    cb = np.array([c[bi] if bi < ncols else 0.0 for bi in basis])
    dual = np.linalg.solve(bmat.T, cb)
    dual[neg] *= -1.0
    return LpSolution(
        OPTIMAL,
        float(value),
        tuple(map(float, primal)),
        tuple(map(float, dual)),
        tuple(int(b) for b in basis),
    )


def lp_solve_float(problem: LpProblem, tol: float = 1e-7) -> LpSolution:
    """Double-precision solve for the float-only oracles (m >= 3).

    Same interface as lp_solve with float payloads; never a certificate.
    """
    nrows, ncols = problem.nrows, problem.ncols
    check_guard("lp rows+cols", nrows + ncols, LP_SIZE_GUARD)
    if nrows == 0:
        if any(float(c) > tol for c in problem.objective):
            return LpSolution(UNBOUNDED)
        return LpSolution(OPTIMAL, 0.0, tuple(0.0 for _ in range(ncols)), (), ())
    sol = _float_simplex(problem)
    if sol.status == _STALLED:
        raise RuntimeError("float simplex hit its iteration cap")
    return sol
