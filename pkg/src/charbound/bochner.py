"""Both sides of Bochner's theorem for C_m^n, as executable tests.

A map on the group is positive semidefinite exactly when every Fourier
coefficient is a nonnegative real; it is normalized exactly when the
coefficients sum to one.  ``psd_via_fourier`` tests the spectral side.
``psd_direct`` builds the full Gram-style matrix M[g,h] = f(g - h) and
tests it directly: an exact fraction-free factorization with diagonal
pivoting for m = 2, a Hermitian eigenvalue check for floats.  The two
verdicts agreeing on random corpora is the theorem, run as a test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from .group_core import (
    GroupFunction,
    check_guard,
    fourier_forward,
    sub_rank,
)

__all__ = ["PsdVerdict", "psd_via_fourier", "psd_direct"]

DENSE_PSD_GUARD = 1 << 12


@dataclass(frozen=True, eq=False)
class PsdVerdict:
    """Outcome of a PSD/normalization test.

    When ``psd`` is false the witness is present: either the rank of an
    offending Fourier coefficient, or a vector v with v* M v < 0.
    """

    normalized: bool
    psd: bool
    witness: Optional[Union[int, Tuple]] = None


def psd_via_fourier(f: GroupFunction) -> PsdVerdict:
    """Spectral test: all coefficients real and >= 0, summing to 1.

    The witness on failure is the rank of the worst coefficient (most
    negative real part, or largest imaginary part when non-real).
    """
    spectrum = fourier_forward(f)
    tol = f.kind.tolerance
    if f.kind.exact:
        psd = True
        worst_rank = None
        worst = Fraction(0)
        for r, v in enumerate(spectrum.values):
            if v < 0:
                psd = False
                if v < worst:
                    worst = v
                    worst_rank = r
        normalized = sum(spectrum.values) == 1
        return PsdVerdict(normalized, psd, worst_rank)

    vals = np.asarray(spectrum.values)
    bad_imag = np.abs(vals.imag) > tol
    bad_real = vals.real < -tol
    psd = not (bad_imag.any() or bad_real.any())
    witness = None
    if not psd:
        if bad_real.any():
            witness = int(np.argmin(np.where(bad_real, vals.real, np.inf)))
        else:
            witness = int(np.argmax(np.abs(vals.imag)))
    normalized = abs(vals.sum() - 1.0) <= tol
    return PsdVerdict(normalized, psd, witness)


def psd_direct(f: GroupFunction) -> PsdVerdict:
    """Matrix test on M[g,h] = f(g - h) over the whole group.

    Testing the single full matrix covers every finite selection of group
    elements, since those Gram matrices are principal submatrices of it.
    """
    spec = f.spec
    check_guard("dense PSD order", spec.order, DENSE_PSD_GUARD)
    order = spec.order
    diff = [[sub_rank(spec, g, h) for h in range(order)] for g in range(order)]
    if f.kind.exact:
        matrix = [[f.values[diff[g][h]] for h in range(order)] for g in range(order)]
        psd, witness = _psd_exact(matrix)
        normalized = f.values[0] == 1
        return PsdVerdict(normalized, psd, witness)

    vals = np.asarray(f.values)
    matrix = vals[np.array(diff)]
    herm_defect = np.abs(matrix - matrix.conj().T).max()
    tol = f.kind.tolerance
    eigvals, eigvecs = np.linalg.eigh((matrix + matrix.conj().T) / 2.0)
    scale = max(1.0, float(np.abs(eigvals).max()))
    psd = herm_defect <= tol * scale and eigvals[0] >= -tol * scale
    witness = None if psd else tuple(eigvecs[:, 0])
    normalized = abs(complex(vals[0]) - 1.0) <= tol
    return PsdVerdict(normalized, psd, witness)


# --- exact factorization with witness extraction ----------------------------


def _psd_exact(matrix: List[List[Fraction]]) -> Tuple[bool, Optional[Tuple[Fraction, ...]]]:
    """Fraction-free symmetric elimination with diagonal pivoting.

    The matrix is scaled to integers (a positive congruence, PSD-invariant)
    and reduced Bareiss-style, so every intermediate entry is an integer
    minor.  Pivots are always positive diagonals; a negative diagonal or a
    zero diagonal block with a nonzero off-diagonal entry disproves PSD,
    and the witness vector is lifted back through the recorded eliminations.
    """
    size = len(matrix)
    denom_lcm = 1
    for row in matrix:
        for v in row:
            denom_lcm = denom_lcm * v.denominator // math.gcd(denom_lcm, v.denominator)
    m = [[int(v * denom_lcm) for v in row] for row in matrix]

    active = list(range(size))
    steps: List[Tuple[int, dict]] = []
    prev_pivot = 1
    while active:
        neg = next((i for i in active if m[i][i] < 0), None)
        if neg is not None:
            witness = _lift_witness(size, steps, {neg: Fraction(1)})
            return False, witness
        piv = next((i for i in active if m[i][i] > 0), None)
        if piv is None:
            for ai, i in enumerate(active):
                for j in active[ai + 1 :]:
                    if m[i][j] != 0:
                        sign = 1 if m[i][j] > 0 else -1
                        witness = _lift_witness(
                            size, steps, {i: Fraction(1), j: Fraction(-sign)}
                        )
                        return False, witness
            return True, None
        d = m[piv][piv]
        active.remove(piv)
        mults = {}
        for j in active:
            if m[piv][j]:
                mults[j] = Fraction(m[piv][j], d)
        for j in active:
            mj = m[j]
            mp = m[piv]
            a = mp[j]
            if a:
                for k in active:
                    mj[k] = (d * mj[k] - a * mp[k]) // prev_pivot
            else:
                for k in active:
                    mj[k] = (d * mj[k]) // prev_pivot
        steps.append((piv, mults))
        prev_pivot = d
    return True, None


def _lift_witness(size: int, steps: List[Tuple[int, dict]], reduced: dict) -> Tuple[Fraction, ...]:
    """Back-substitute a reduced-space witness through the elimination steps.

    Each step replaced basis vector v_j by v_j - c_j v_piv; replaying the
    steps forward on unit vectors materializes the congruence.
    """
    all_vecs = {}
    for i in range(size):
        v = [Fraction(0)] * size
        v[i] = Fraction(1)
        all_vecs[i] = v
    for piv, mults in steps:
        pv = all_vecs[piv]
        for j, c in mults.items():
            vj = all_vecs[j]
            all_vecs[j] = [a - c * b for a, b in zip(vj, pv)]
    out = [Fraction(0)] * size
    for j, w in reduced.items():
        for idx, component in enumerate(all_vecs[j]):
            out[idx] += w * component
    return tuple(out)
