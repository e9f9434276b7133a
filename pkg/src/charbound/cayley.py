"""The Cayley graph family on C_m^n with weight-band connection sets.

A graph in the family connects x and y when the weight of x - y (or of
y - x; weight is not negation-invariant for m > 2) lies in the band
[t_lo, t_hi].  The band form covers the upper-tail threshold graphs, their
complements within the family, and the connection sets of the k-wise
independence linear programs uniformly.  t_lo = t_hi + 1 encodes the empty
graph.  Graphs are never materialized; the edge predicate is the API.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .group_core import GroupSpec, weights_by_rank

__all__ = [
    "CayleySpec",
    "from_paper_params",
    "is_edge",
    "complement_spec",
    "connection_ranks",
]

LITERAL = "literal"
STRICT = "strict"
CUSTOM = "custom"


@dataclass(frozen=True)
class CayleySpec:
    """Graph family member: group, connection-weight band, provenance tag.

    ``tag`` records which threshold reading produced the band ("literal"
    for edges at difference weight >= d, "strict" for >= d + 1, "custom"
    for direct band construction) so that every report is unambiguous
    about the off-by-one convention.
    """

    group: GroupSpec
    t_lo: int
    t_hi: int
    tag: str = CUSTOM
    d: Optional[int] = None

    def __post_init__(self) -> None:
        wmax = self.group.max_weight
        if not 1 <= self.t_lo <= self.t_hi + 1:
            raise ValueError(
                f"weight band needs 1 <= t_lo <= t_hi + 1, got [{self.t_lo}, {self.t_hi}]"
            )
        if not 0 <= self.t_hi <= wmax:
            raise ValueError(f"t_hi = {self.t_hi} outside 0..{wmax}")
        if self.tag not in (LITERAL, STRICT, CUSTOM):
            raise ValueError(f"unknown convention tag {self.tag!r}")

    @property
    def is_empty(self) -> bool:
        return self.t_lo > self.t_hi

    @property
    def convention(self) -> str:
        if self.tag == CUSTOM or self.d is None:
            return CUSTOM
        return f"{self.tag}(d={self.d})"

    def connection_weights(self) -> range:
        return range(self.t_lo, self.t_hi + 1)


def from_paper_params(m: int, n: int, d: int, convention: str = LITERAL) -> CayleySpec:
    """Threshold graph with parameter d, under either convention.

    literal: edges at difference weight >= d.  strict: >= d + 1 (the
    reading under which the rank formula's witness is tight; strict with
    d = (m-1)n gives the empty graph).
    """
    group = GroupSpec(m, n)
    if not 1 <= d <= group.max_weight:
        raise ValueError(f"d = {d} outside 1..{group.max_weight}")
    if convention == LITERAL:
        t_lo = d
    elif convention == STRICT:
        t_lo = d + 1
    else:
        raise ValueError(f"convention must be 'literal' or 'strict', got {convention!r}")
    return CayleySpec(group, t_lo, group.max_weight, tag=convention, d=d)


def is_edge(spec: CayleySpec, x: Sequence[int], y: Sequence[int]) -> bool:
    """Edge predicate; x = y returns False (graphs are loopless)."""
    g = spec.group
    xc = g.validate_element(x)
    yc = g.validate_element(y)
    if xc == yc:
        return False
    m = g.m
    w_xy = sum((a - b) % m for a, b in zip(xc, yc))
    if spec.t_lo <= w_xy <= spec.t_hi:
        return True
    w_yx = sum((b - a) % m for a, b in zip(xc, yc))
    return spec.t_lo <= w_yx <= spec.t_hi


def complement_spec(spec: CayleySpec) -> CayleySpec:
    """Complement within the family; m = 2 upper-tail graphs only.

    For m = 2 the weight of x - y equals the weight of y - x, so the
    complement of the band [t_lo, n] is exactly the band [1, t_lo - 1] on
    the same vertex set.  For m > 2 the family is not closed under
    complement and the request is rejected.
    """
    if spec.group.m != 2:
        raise ValueError("complement within the family requires m = 2 (weight symmetry)")
    if spec.t_hi != spec.group.max_weight:
        raise ValueError("complement is defined for upper-tail bands [t_lo, n] only")
    return CayleySpec(spec.group, 1, spec.t_lo - 1, tag=CUSTOM, d=None)


def connection_ranks(spec: CayleySpec) -> List[int]:
    """Ranks of the connection-set elements, in rank order."""
    spec.group.check_dense()
    weights = weights_by_rank(spec.group)
    return [int(r) for r in range(spec.group.order) if spec.t_lo <= weights[r] <= spec.t_hi]
