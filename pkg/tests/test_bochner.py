"""Spectral and matrix-side PSD tests and their equivalence."""

import itertools
import random
from fractions import Fraction

import pytest

from charbound.bochner import psd_direct, psd_via_fourier
from charbound.group_core import (
    GroupFunction,
    GroupSpec,
    ScalarKind,
    Spectrum,
    char_eval,
    fourier_forward,
    fourier_inverse,
    sub_rank,
    unrank,
)


def test_character_is_normalized_psd():
    spec = GroupSpec(2, 3)
    f = GroupFunction.from_values(
        spec, [char_eval(spec, (1, 1, 0), unrank(spec, x)) for x in range(8)]
    )
    for verdict in (psd_via_fourier(f), psd_direct(f)):
        assert verdict.psd and verdict.normalized


def test_two_point_counterexample():
    f = GroupFunction.from_values(GroupSpec(2, 1), [1, -2])
    via = psd_via_fourier(f)
    assert not via.psd and via.witness == 0  # transform is (-1/2, 3/2)
    direct = psd_direct(f)
    assert not direct.psd
    w = direct.witness
    m = [[Fraction(1), Fraction(-2)], [Fraction(-2), Fraction(1)]]
    quad = sum(w[i] * m[i][j] * w[j] for i in range(2) for j in range(2))
    assert quad < 0


def test_indicator_scaled_is_psd():
    spec = GroupSpec(3, 2)
    f = GroupFunction.from_values(spec, [1] + [0] * 8)
    via = psd_via_fourier(f)
    assert via.psd and via.normalized
    assert all(abs(v - 1 / 9) < 1e-12 for v in fourier_forward(f).values)
    assert psd_direct(f).psd


def test_all_ones_is_psd():
    spec = GroupSpec(2, 2)
    f = GroupFunction.from_values(spec, [1, 1, 1, 1])
    assert psd_direct(f).psd
    assert psd_via_fourier(f).psd


def test_random_nonnegative_spectra_are_psd_m3():
    rng = random.Random(50)
    for _ in range(50):
        n = rng.randint(1, 3)
        spec = GroupSpec(3, n)
        raw = [rng.uniform(0, 1) for _ in range(spec.order)]
        f = fourier_inverse(Spectrum.from_values(spec, raw, ScalarKind.complex_float()))
        assert psd_via_fourier(f).psd
        assert psd_direct(f).psd


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2)])
def test_equivalence_small_corpus(m, n):
    rng = random.Random(60 + m * 10 + n)
    spec = GroupSpec(m, n)
    for trial in range(40):
        if m == 2:
            if trial % 2 == 0:
                vals = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(spec.order)]
                f = GroupFunction.from_values(spec, vals, ScalarKind.exact_rational())
            else:
                raw = [Fraction(rng.randint(0, 5)) for _ in range(spec.order)]
                total = sum(raw) or Fraction(1)
                f = fourier_inverse(
                    Spectrum(spec, tuple(v / total for v in raw), ScalarKind.exact_rational())
                )
        else:
            vals = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(spec.order)]
            f = GroupFunction.from_values(spec, vals)
        via = psd_via_fourier(f)
        direct = psd_direct(f)
        assert via.psd == direct.psd
        assert via.normalized == direct.normalized


def test_normalization_equivalence():
    # f(0) = 1 iff the coefficients sum to 1, on random exact functions.
    rng = random.Random(70)
    spec = GroupSpec(2, 3)
    for _ in range(50):
        vals = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(spec.order)]
        f = GroupFunction.from_values(spec, vals, ScalarKind.exact_rational())
        assert psd_via_fourier(f).normalized == (vals[0] == 1)


def test_verdict_invariant_under_coordinate_permutation():
    rng = random.Random(80)
    spec = GroupSpec(2, 3)
    for _ in range(20):
        vals = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(spec.order)]
        f = GroupFunction.from_values(spec, vals, ScalarKind.exact_rational())
        base = psd_via_fourier(f)
        for perm in itertools.permutations(range(3)):
            pvals = [Fraction(0)] * spec.order
            for r in range(spec.order):
                x = unrank(spec, r)
                px = tuple(x[perm[i]] for i in range(3))
                pvals[r] = vals[sum(v << i for i, v in enumerate(px))]
            pf = GroupFunction.from_values(spec, pvals, ScalarKind.exact_rational())
            got = psd_via_fourier(pf)
            assert got.psd == base.psd and got.normalized == base.normalized


def test_direct_witness_is_certified_negative():
    # Every failing direct verdict must carry a vector with v* M v < 0.
    rng = random.Random(90)
    spec = GroupSpec(2, 3)
    found = 0
    for _ in range(60):
        vals = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(spec.order)]
        f = GroupFunction.from_values(spec, vals, ScalarKind.exact_rational())
        verdict = psd_direct(f)
        if verdict.psd:
            continue
        found += 1
        w = verdict.witness
        quad = Fraction(0)
        for g in range(spec.order):
            for h in range(spec.order):
                quad += w[g] * vals[sub_rank(spec, g, h)] * w[h]
        assert quad < 0
    assert found > 10
