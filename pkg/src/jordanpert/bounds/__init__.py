"""Checkers for the finite-rank perturbation bounds, the rank-one construction and fuzz campaigns."""

from .campaign import CampaignConfig, fuzz_campaign, gaps_to_csv, lambda_candidates, report_to_json, sharp_sweep
from .construct import (
    Certificate,
    Construction,
    ConstructionError,
    DependentClassesError,
    RankError,
    proof_construct_rank_one,
)
from .theorem import (
    BoundRecord,
    BoundReport,
    RootBoundReport,
    SavchenkoReport,
    check_main_bounds,
    check_root_bounds,
    check_savchenko,
)

__all__ = [
    "BoundRecord", "BoundReport", "RootBoundReport", "SavchenkoReport",
    "check_main_bounds", "check_root_bounds", "check_savchenko",
    "Certificate", "Construction", "ConstructionError", "DependentClassesError", "RankError",
    "proof_construct_rank_one",
    "CampaignConfig", "fuzz_campaign", "sharp_sweep", "lambda_candidates", "report_to_json", "gaps_to_csv",
]
