"""Exact computation of Novikov complexes and Novikov numbers from chain-level data.

The ring R = (1 + zZ[z])^-1 Z[z, z^-1] carries all data for k = 0; twisted
group-ring coefficients use the Novikov completion truncated at a chosen order.
"""
from .errors import *  # noqa: F401,F403
from .group_algebra import GroupRing, Monodromy, TwistedLaurentRing, apply_alpha, coefficient_ring
from .homological_core import (
    BasedComplex,
    ChainMapPair,
    ThreeBlockComplex,
    deform,
    mapping_cone,
    localized_complex,
    theorem_2_4,
    validate_homological_data,
    verify_deformation,
)
from .invariants import (
    betti_oracle,
    homology_invariants,
    novikov_verdict,
    rank_Qz,
    snf_novikov,
    verify_snf,
)
from .localization import SigmaMatrix, factorization_check, invert_exact_R, invert_truncated
from .matrix import Matrix
from .ring_core import (
    RR,
    ZZ,
    IntLaurentPoly,
    RationalR,
    SeriesRing,
    TruncatedSeries,
    divides,
    expand_series,
    is_unit,
    valuation_and_lowest,
)
from .workbench import generate_example, parse_and_validate
from .workbench.pipeline import PipelineReport, run_pipeline
from .workbench.harness import property_harness

__version__ = "0.1.0"
