"""Elements, characters, and Fourier analysis on the group C_m^n.

Functions on the group are stored densely, indexed by the little-endian
mixed-radix rank of the element.  Arithmetic is exact (fractions) for m = 2,
where all characters are real, and complex floating point with an explicit
tolerance for larger moduli.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

__all__ = [
    "GuardError",
    "GroupSpec",
    "ScalarKind",
    "GroupFunction",
    "Spectrum",
    "check_guard",
    "rank",
    "unrank",
    "elements",
    "weight",
    "weight_of_rank",
    "weights_by_rank",
    "sub_rank",
    "neg_rank",
    "char_eval",
    "char_column",
    "digits_matrix",
    "tabulate",
    "fourier_forward",
    "fourier_inverse",
    "poly_degree",
    "nonzero_count",
    "lp_norm",
    "binary_entropy",
]

Element = Tuple[int, ...]
Scalar = Union[Fraction, complex]

ORDER_GUARD = 1 << 26
GUARD_ENV = "CHARBOUND_GUARD_OVERRIDE"


class GuardError(ValueError):
    """A size guard was exceeded."""


def check_guard(what: str, value: int, default_limit: int) -> None:
    """Raise GuardError when ``value`` exceeds the guard.

    The environment variable CHARBOUND_GUARD_OVERRIDE, when set to an
    integer larger than the built-in limit, lifts the guard at the
    caller's risk.
    """
    limit = default_limit
    raw = os.environ.get(GUARD_ENV)
    if raw is not None:
        try:
            limit = max(limit, int(raw))
        except ValueError:
            pass
    if value > limit:
        raise GuardError(
            f"{what} = {value} exceeds the size guard {limit}; "
            f"set {GUARD_ENV} to raise it at your own risk"
        )


@dataclass(frozen=True)
class GroupSpec:
    """The ambient group C_m^n with m >= 2 and n >= 1 coordinates.

    Construction is cheap and symbolic; the dense-size guard (order up to
    2^26) is enforced by the operations that actually allocate one value
    per group element.
    """

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"modulus m must be >= 2, got {self.m}")
        if self.n < 1:
            raise ValueError(f"coordinate count n must be >= 1, got {self.n}")

    @property
    def order(self) -> int:
        return self.m**self.n

    @property
    def max_weight(self) -> int:
        return (self.m - 1) * self.n

    def check_dense(self) -> None:
        check_guard(f"group order {self.m}^{self.n}", self.order, ORDER_GUARD)

    def validate_element(self, x: Sequence[int]) -> Element:
        if len(x) != self.n:
            raise ValueError(f"element has {len(x)} coordinates, spec needs {self.n}")
        coords = tuple(int(v) for v in x)
        if any(v < 0 or v >= self.m for v in coords):
            raise ValueError(f"element {coords} has entries outside 0..{self.m - 1}")
        return coords


@dataclass(frozen=True)
class ScalarKind:
    """Arithmetic mode for group functions.

    ``exact`` uses fractions end to end and is only valid when every
    character is real, i.e. m <= 2.  The float mode carries the tolerance
    used by all nonzero and PSD tests.
    """

    exact: bool
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")

    @classmethod
    def exact_rational(cls) -> "ScalarKind":
        return cls(exact=True, tolerance=0.0)

    @classmethod
    def complex_float(cls, tolerance: float = 1e-9) -> "ScalarKind":
        return cls(exact=False, tolerance=tolerance)


def _coerce_values(spec: GroupSpec, values: Sequence, kind: ScalarKind):
    spec.check_dense()
    if kind.exact:
        if spec.m > 2:
            raise ValueError("exact rational arithmetic needs real characters (m <= 2)")
        vals = tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)
    else:
        vals = np.array(values, dtype=np.complex128)
        vals.setflags(write=False)
    if len(vals) != spec.order:
        raise ValueError(
            f"expected {spec.order} values for C_{spec.m}^{spec.n}, got {len(vals)}"
        )
    return vals


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """A dense map C_m^n -> scalars, indexed by element rank."""

    spec: GroupSpec
    values: Union[Tuple[Fraction, ...], np.ndarray]
    kind: ScalarKind

    @classmethod
    def from_values(
        cls, spec: GroupSpec, values: Sequence, kind: Optional[ScalarKind] = None
    ) -> "GroupFunction":
        if kind is None:
            kind = ScalarKind.exact_rational() if spec.m == 2 else ScalarKind.complex_float()
        return cls(spec, _coerce_values(spec, values, kind), kind)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Fourier coefficients of a group function, indexed by character rank z."""

    spec: GroupSpec
    values: Union[Tuple[Fraction, ...], np.ndarray]
    kind: ScalarKind

    @classmethod
    def from_values(
        cls, spec: GroupSpec, values: Sequence, kind: Optional[ScalarKind] = None
    ) -> "Spectrum":
        if kind is None:
            kind = ScalarKind.exact_rational() if spec.m == 2 else ScalarKind.complex_float()
        return cls(spec, _coerce_values(spec, values, kind), kind)


def tabulate(
    spec: GroupSpec, fn: Callable[[Element], Scalar], kind: Optional[ScalarKind] = None
) -> GroupFunction:
    """Build a GroupFunction by evaluating ``fn`` on every element."""
    spec.check_dense()
    return GroupFunction.from_values(spec, [fn(unrank(spec, i)) for i in range(spec.order)], kind)


# --- element indexing ------------------------------------------------------


def rank(spec: GroupSpec, x: Sequence[int]) -> int:
    """Little-endian mixed-radix rank: sum of x_i * m^i."""
    coords = spec.validate_element(x)
    r = 0
    for v in reversed(coords):
        r = r * spec.m + v
    return r


def unrank(spec: GroupSpec, r: int) -> Element:
    if r < 0 or r >= spec.order:
        raise ValueError(f"rank {r} out of range for group of order {spec.order}")
    coords = []
    for _ in range(spec.n):
        r, v = divmod(r, spec.m)
        coords.append(v)
    return tuple(coords)


def elements(spec: GroupSpec) -> Iterator[Element]:
    """All group elements in rank order."""
    spec.check_dense()
    return (unrank(spec, i) for i in range(spec.order))


def weight(x: Sequence[int]) -> int:
    """Coordinate sum with entries read as natural numbers."""
    return sum(x)


@lru_cache(maxsize=None)
def weights_by_rank(spec: GroupSpec) -> np.ndarray:
    """Vector of element weights indexed by rank."""
    spec.check_dense()
    t = np.zeros(spec.order, dtype=np.int64)
    idx = np.arange(spec.order)
    for c in range(spec.n):
        t += (idx // spec.m**c) % spec.m
    t.setflags(write=False)
    return t


def weight_of_rank(spec: GroupSpec, r: int) -> int:
    if spec.m == 2:
        return int(r).bit_count()
    w = 0
    for _ in range(spec.n):
        r, v = divmod(r, spec.m)
        w += v
    return w


def sub_rank(spec: GroupSpec, i: int, j: int) -> int:
    """Rank of the element difference x - y, given ranks i of x and j of y."""
    if spec.m == 2:
        return i ^ j
    out = 0
    mult = 1
    for _ in range(spec.n):
        i, a = divmod(i, spec.m)
        j, b = divmod(j, spec.m)
        out += ((a - b) % spec.m) * mult
        mult *= spec.m
    return out


def neg_rank(spec: GroupSpec, i: int) -> int:
    if spec.m == 2:
        return i
    out = 0
    mult = 1
    for _ in range(spec.n):
        i, a = divmod(i, spec.m)
        out += ((-a) % spec.m) * mult
        mult *= spec.m
    return out


# --- characters ------------------------------------------------------------


@lru_cache(maxsize=None)
def _root_table(m: int) -> Tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / m) for k in range(m))


@lru_cache(maxsize=None)
def digits_matrix(spec: GroupSpec) -> np.ndarray:
    """(order, n) array of element digits, row r = unrank(r)."""
    spec.check_dense()
    idx = np.arange(spec.order)
    mat = np.stack([(idx // spec.m**c) % spec.m for c in range(spec.n)], axis=1)
    mat.setflags(write=False)
    return mat


def char_column(spec: GroupSpec, z_rank: int) -> np.ndarray:
    """chi_z evaluated at every element rank, as a complex vector."""
    roots = np.array(_root_table(spec.m), dtype=np.complex128)
    z = np.asarray(unrank(spec, z_rank), dtype=np.int64)
    dots = (digits_matrix(spec) @ z) % spec.m
    return roots[dots]


def char_eval(spec: GroupSpec, z: Sequence[int], x: Sequence[int]) -> Scalar:
    """Evaluate the character indexed by z at x: zeta_m^(z.x).

    Exact +-1 for m = 2, a complex unit otherwise.
    """
    zc = spec.validate_element(z)
    xc = spec.validate_element(x)
    dot = sum(a * b for a, b in zip(zc, xc)) % spec.m
    if spec.m == 2:
        return 1 if dot == 0 else -1
    return _root_table(spec.m)[dot]


# --- Fourier transform -----------------------------------------------------


def _walsh_inplace(v: list) -> list:
    """Radix-2 butterfly passes; the +-1 kernel is its own inverse up to scale."""
    h = 1
    size = len(v)
    while h < size:
        for start in range(0, size, 2 * h):
            for i in range(start, start + h):
                a = v[i]
                b = v[i + h]
                v[i] = a + b
                v[i + h] = a - b
        h *= 2
    return v


def _dft_passes(flat: np.ndarray, m: int, n: int, forward: bool) -> np.ndarray:
    sign = -2j if forward else 2j
    grid = np.arange(m)
    w = np.exp(sign * np.pi * np.outer(grid, grid) / m)
    arr = flat.reshape((m,) * n)
    for axis in range(n):
        arr = np.moveaxis(np.tensordot(w, arr, axes=(1, axis)), 0, axis)
    return np.ascontiguousarray(arr).reshape(m**n)


def fourier_forward(f: GroupFunction) -> Spectrum:
    """Fourier coefficients f^(z) = m^-n * sum_x f(x) * conj(chi_z(x)).

    Computed with n sequential radix-m butterfly passes, never the direct
    double sum (cost O(n * m^(n+1)) scalar operations).
    """
    if f.kind.exact:
        vals = _walsh_inplace(list(f.values))
        scale = Fraction(1, f.spec.order)
        return Spectrum(f.spec, tuple(v * scale for v in vals), f.kind)
    arr = _dft_passes(np.asarray(f.values, dtype=np.complex128), f.spec.m, f.spec.n, True)
    arr = arr / f.spec.order
    arr.setflags(write=False)
    return Spectrum(f.spec, arr, f.kind)


def fourier_inverse(spectrum: Spectrum) -> GroupFunction:
    """Resum the expansion f(x) = sum_z F(z) * chi_z(x)."""
    if spectrum.kind.exact:
        vals = _walsh_inplace(list(spectrum.values))
        return GroupFunction(spectrum.spec, tuple(vals), spectrum.kind)
    arr = _dft_passes(
        np.asarray(spectrum.values, dtype=np.complex128), spectrum.spec.m, spectrum.spec.n, False
    )
    arr.setflags(write=False)
    return GroupFunction(spectrum.spec, arr, spectrum.kind)


# --- derived quantities ----------------------------------------------------


def poly_degree(f: GroupFunction) -> int:
    """Largest character weight in the spectrum's support; -1 for the zero map.

    Under the multiplicative embedding of C_m into the unit circle, the
    character indexed by z is the monomial of degree weight(z), so this is
    the least interpolating polynomial degree.
    """
    spectrum = fourier_forward(f)
    weights = weights_by_rank(f.spec)
    deg = -1
    if f.kind.exact:
        for r, v in enumerate(spectrum.values):
            if v != 0:
                deg = max(deg, int(weights[r]))
    else:
        mask = np.abs(spectrum.values) > f.kind.tolerance
        if mask.any():
            deg = int(weights[mask].max())
    return deg


def nonzero_count(f: GroupFunction) -> int:
    """Number of points where f is nonzero (beyond tolerance in float mode)."""
    if f.kind.exact:
        return sum(1 for v in f.values if v != 0)
    return int((np.abs(np.asarray(f.values)) > f.kind.tolerance).sum())


def lp_norm(f: GroupFunction, p: float) -> float:
    """Normalized l_p norm: (m^-n * sum |f(x)|^p)^(1/p); max |f| for p = inf."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if f.kind.exact:
        absvals = np.array([float(abs(v)) for v in f.values])
    else:
        absvals = np.abs(np.asarray(f.values))
    if math.isinf(p):
        return float(absvals.max())
    return float((np.mean(absvals**p)) ** (1.0 / p))


def binary_entropy(p: float) -> float:
    """-p*log2(p) - (1-p)*log2(1-p), with the boundary values 0 by continuity."""
    if p < 0 or p > 1:
        raise ValueError(f"binary_entropy needs 0 <= p <= 1, got {p}")
    if p == 0 or p == 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)
