"""Resolutions of monomially headed algebras by Morse matching, with exact
cohomology of the symmetric group algebra presented by a^2 = b^2 = c^2 = 1
and bca = acb."""

from .algebra import (
    ComputationError,
    ParseError,
    Presentation,
    RewriteRule,
    StepBudgetExceeded,
    load_presentation,
    normal_form,
    parse_word,
    poly_multiply,
    render_poly,
    render_word,
)
from .chains import (
    ChainElement,
    NotAChain,
    chain_degree,
    chain_factorization,
    enumerate_chains,
    is_prechain,
)
from .confluence import check_confluence, overlaps, resolve
from .g23 import (
    DegreeMismatch,
    closed_form_differential,
    closed_form_table,
    g23_chain_words,
    g23_presentation,
)
from .hochschild import (
    PRESETS,
    CohomologyReport,
    NegativeDimension,
    OneDimBimodule,
    RationalMatrix,
    SignCharacter,
    build_matrix,
    cohomology_dim,
    parse_bimodule,
    report,
    specialize,
)
from .morse import (
    CycleDetected,
    DepthBudgetExceeded,
    GraphRecorder,
    MatchInfo,
    MatchingInconsistency,
    NonScalarMatchWeight,
    anick_differential,
    bar_edges,
    classify_vertex,
    compose_check,
    differential_table,
    to_dot,
    vertex_name,
)

__version__ = "0.1.0"
