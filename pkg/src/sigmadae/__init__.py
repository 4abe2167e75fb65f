"""Signature-matrix structural analysis of differential-algebraic systems.

The main entry points are re-exported here; see the submodules for the
full API. All indices are 0-based.
"""
from .assignment import canonical_offsets, check_offsets, d_from_c, normalise, solve_hvt
from .blocktri import (
    classify_fine_irreducible,
    coarse_blocks,
    digraph_of,
    essential_pattern,
    fine_blocks,
    irreducible_btf,
    is_irreducible,
    strong_components,
)
from .dae import parse_dae, signature_of
from .fineblock import (
    btf_block_order,
    build_fbg,
    canonical_lead_times,
    check_lead_times,
    classify_offset_set,
    coarse_via_fbg,
    critical_subgraph,
    enumerate_normalised_lead_times,
    is_btf_order,
    lead_times,
    offsets_from_lead_times,
    quotient_graph,
)
from .sigfile import format_sig, load, parse_sig
from .sigma_core import (
    BlockForm,
    Emblem,
    OffsetPair,
    Permutation,
    SignatureMatrix,
    SparsityPattern,
    Transversal,
    jacobian_pattern,
    pattern_of,
)

__version__ = "0.1.0"
