"""Certified character-sum bounds on C_m^n.

Exact-arithmetic tooling for the extremal quantities of weight-threshold
Cayley graphs: symmetric orthogonal rank with matching witness embeddings
and a brute-force referee, Lovász theta through character-reduced linear
programs with verifiable rational certificates, maximal all-zeros
probabilities of k-wise independent distributions, and Lagrange
interpolation certificates that turn the theta LP into exponential
complement bounds.
"""

from .group_core import (
    GroupFunction,
    GroupSpec,
    GuardError,
    ScalarKind,
    Spectrum,
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
)
from .cayley import CayleySpec, complement_spec, from_paper_params, is_edge
from .bochner import PsdVerdict, psd_direct, psd_via_fourier
from .embedding import (
    Embedding,
    EmbeddingCheck,
    NotPsdError,
    SymRankReport,
    build_witness,
    dlsz_check,
    dlsz_floor,
    embed_from_function,
    min_support_oracle,
    symork_formula,
    verify_embedding,
)
from .ratlp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LpProblem,
    LpSolution,
    lp_solve,
    lp_solve_float,
    lp_verify_certificate,
)
from .theta import (
    KrawtchoukTable,
    ThetaReport,
    hypercontractivity_check,
    is_kwise_independent,
    krawtchouk,
    kwise_max_zero_prob,
    theta_complement_lower,
    theta_dense,
    theta_reduced,
)
from .interp import (
    CHAIN_RATE,
    InterpReport,
    InterpSet,
    default_set,
    interp_bound,
    lagrange_factor,
    rate_report,
    set_search,
    verify_interp_inequality,
)

__version__ = "0.1.0"
