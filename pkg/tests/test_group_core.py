"""Element indexing, characters, transforms, and derived quantities."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from charbound.group_core import (
    GroupFunction,
    GroupSpec,
    GuardError,
    ScalarKind,
    binary_entropy,
    char_eval,
    fourier_forward,
    fourier_inverse,
    lp_norm,
    nonzero_count,
    poly_degree,
    rank,
    unrank,
    weight,
    weight_of_rank,
)


def test_rank_examples():
    assert rank(GroupSpec(2, 3), (1, 0, 0)) == 1
    assert rank(GroupSpec(3, 2), (2, 1)) == 5
    assert unrank(GroupSpec(5, 3), 0) == (0, 0, 0)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 2), (4, 3), (5, 2)])
def test_rank_unrank_roundtrip(m, n):
    spec = GroupSpec(m, n)
    for r in range(spec.order):
        assert rank(spec, unrank(spec, r)) == r


def test_rank_rejects_bad_elements():
    spec = GroupSpec(3, 2)
    with pytest.raises(ValueError):
        rank(spec, (1, 2, 0))
    with pytest.raises(ValueError):
        rank(spec, (3, 0))
    with pytest.raises(ValueError):
        unrank(spec, 9)


def test_weight_examples():
    assert weight((0, 1, 1, 0)) == 2
    assert weight((2, 2, 0)) == 4
    assert weight((0, 0, 0)) == 0
    spec = GroupSpec(3, 3)
    for r in range(spec.order):
        assert weight_of_rank(spec, r) == weight(unrank(spec, r))


def test_char_examples():
    assert char_eval(GroupSpec(2, 2), (1, 1), (1, 0)) == -1
    spec = GroupSpec(3, 2)
    for r in range(spec.order):
        assert char_eval(spec, (0, 0), unrank(spec, r)) == 1
    assert abs(char_eval(GroupSpec(4, 1), (1,), (1,)) - 1j) < 1e-12


def test_char_multiplicative():
    spec = GroupSpec(4, 2)
    rng = random.Random(5)
    for _ in range(50):
        z = unrank(spec, rng.randrange(spec.order))
        x = unrank(spec, rng.randrange(spec.order))
        y = unrank(spec, rng.randrange(spec.order))
        xy = tuple((a + b) % spec.m for a, b in zip(x, y))
        lhs = char_eval(spec, z, xy)
        rhs = char_eval(spec, z, x) * char_eval(spec, z, y)
        assert abs(lhs - rhs) < 1e-12


def test_char_orthonormality_up_to_256():
    # m^-n sum_x chi_z conj(chi_z') = [z == z'] for every pair, m^n <= 256.
    from charbound.group_core import char_column

    for m, n in [(2, 3), (3, 2), (4, 2), (3, 4), (2, 8), (4, 4)]:
        spec = GroupSpec(m, n)
        table = np.stack([char_column(spec, z) for z in range(spec.order)])
        gram = table @ table.conj().T / spec.order
        assert np.abs(gram - np.eye(spec.order)).max() < 1e-9


def test_forward_indicator():
    f = GroupFunction.from_values(GroupSpec(2, 1), [1, 0])
    F = fourier_forward(f)
    assert F.values == (Fraction(1, 2), Fraction(1, 2))


def test_forward_of_character_is_indicator():
    spec = GroupSpec(2, 4)
    for zr in (0, 3, 9, 15):
        z = unrank(spec, zr)
        f = GroupFunction.from_values(
            spec, [char_eval(spec, z, unrank(spec, x)) for x in range(spec.order)]
        )
        F = fourier_forward(f)
        for r, v in enumerate(F.values):
            assert v == (1 if r == zr else 0)


def test_forward_matches_direct_sum_m3():
    rng = random.Random(0)
    spec = GroupSpec(3, 3)
    vals = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(spec.order)]
    F = fourier_forward(GroupFunction.from_values(spec, vals))
    for zr in range(spec.order):
        z = unrank(spec, zr)
        direct = (
            sum(
                vals[xr] * np.conj(char_eval(spec, z, unrank(spec, xr)))
                for xr in range(spec.order)
            )
            / spec.order
        )
        assert abs(F.values[zr] - direct) < 1e-12


def test_roundtrip_100_trials():
    rng = random.Random(1)
    sizes = [(2, 2), (2, 4), (2, 6), (3, 2), (3, 3), (4, 2), (4, 3), (3, 4), (2, 5), (4, 1)]
    for trial in range(100):
        m, n = sizes[trial % len(sizes)]
        spec = GroupSpec(m, n)
        if m == 2:
            vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(spec.order)]
            f = GroupFunction.from_values(spec, vals, ScalarKind.exact_rational())
            back = fourier_inverse(fourier_forward(f))
            assert back.values == f.values
        else:
            vals = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(spec.order)]
            f = GroupFunction.from_values(spec, vals)
            back = fourier_inverse(fourier_forward(f))
            assert max(abs(a - b) for a, b in zip(back.values, vals)) < 1e-12


def test_parseval():
    rng = random.Random(2)
    for _ in range(20):
        spec = GroupSpec(3, 3)
        vals = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(spec.order)]
        F = fourier_forward(GroupFunction.from_values(spec, vals))
        lhs = sum(abs(v) ** 2 for v in vals) / spec.order
        rhs = sum(abs(v) ** 2 for v in F.values)
        assert abs(lhs - rhs) < 1e-12


def test_plancherel_pairs():
    rng = random.Random(3)
    spec = GroupSpec(2, 4)
    for _ in range(20):
        a = [Fraction(rng.randint(-5, 5)) for _ in range(spec.order)]
        b = [Fraction(rng.randint(-5, 5)) for _ in range(spec.order)]
        Fa = fourier_forward(GroupFunction.from_values(spec, a))
        Fb = fourier_forward(GroupFunction.from_values(spec, b))
        lhs = sum(x * y for x, y in zip(a, b)) / spec.order
        rhs = sum(x * y for x, y in zip(Fa.values, Fb.values))
        assert lhs == rhs


def test_poly_degree():
    spec = GroupSpec(2, 3)
    assert poly_degree(GroupFunction.from_values(spec, [Fraction(3)] * 8)) == 0
    f = GroupFunction.from_values(
        spec, [char_eval(spec, (1, 0, 0), unrank(spec, x)) for x in range(8)]
    )
    assert poly_degree(f) == 1
    zero = GroupFunction.from_values(spec, [Fraction(0)] * 8)
    assert poly_degree(zero) == -1
    spec32 = GroupSpec(3, 2)
    g = GroupFunction.from_values(
        spec32, [char_eval(spec32, (2, 1), unrank(spec32, x)) for x in range(9)]
    )
    assert poly_degree(g) == 3


def test_poly_degree_of_characters_is_weight():
    for m, n in [(2, 4), (3, 2)]:
        spec = GroupSpec(m, n)
        for zr in range(spec.order):
            z = unrank(spec, zr)
            f = GroupFunction.from_values(
                spec, [char_eval(spec, z, unrank(spec, x)) for x in range(spec.order)]
            )
            assert poly_degree(f) == weight(z)


def test_nonzero_count():
    spec = GroupSpec(2, 2)
    assert nonzero_count(GroupFunction.from_values(spec, [0, 0, 0, 0])) == 0
    chi = GroupFunction.from_values(
        spec, [char_eval(spec, (0, 1), unrank(spec, x)) for x in range(4)]
    )
    assert nonzero_count(chi) == 4
    # (1 + chi_{10})/2 is the indicator of x_1 = 0.
    f = GroupFunction.from_values(
        spec,
        [Fraction(1 + char_eval(spec, (1, 0), unrank(spec, x)), 2) for x in range(4)],
    )
    assert nonzero_count(f) == 2


def test_lp_norm():
    spec = GroupSpec(2, 1)
    one = GroupFunction.from_values(spec, [1, 1])
    for p in (1, 2, 3.5, math.inf):
        assert lp_norm(one, p) == pytest.approx(1.0)
    f = GroupFunction.from_values(spec, [2, 0])
    assert lp_norm(f, 1) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        lp_norm(f, 0.5)


def test_lp_norm_monotone_in_p():
    rng = random.Random(4)
    spec = GroupSpec(2, 4)
    for _ in range(100):
        f = GroupFunction.from_values(
            spec, [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(16)]
        )
        n1, n2, ninf = lp_norm(f, 1), lp_norm(f, 2), lp_norm(f, math.inf)
        assert n1 <= n2 + 1e-12
        assert n2 <= ninf + 1e-12


def test_binary_entropy():
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.25) == pytest.approx(0.8112781244591328)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    with pytest.raises(ValueError):
        binary_entropy(-0.1)


def test_exact_kind_requires_m_le_2():
    with pytest.raises(ValueError):
        GroupFunction.from_values(GroupSpec(3, 1), [1, 0, 0], ScalarKind.exact_rational())


def test_dense_guard():
    spec = GroupSpec(2, 30)  # symbolic construction is fine
    with pytest.raises(GuardError):
        spec.check_dense()
