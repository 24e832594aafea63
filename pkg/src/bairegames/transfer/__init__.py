"""Executable strategy constructions over products and Krom spaces."""

from .products import ProductSpace, product_of
from .thm31 import disjoint_family, run_thm31
from .thm32 import (Thm32ChoquetState, Thm32State, assemble_witness, build_sigma_x, build_sigma_y,
                    run_thm32, thm32_state)
from .thm41 import (check_lift, check_lower, check_roundtrip, duality_suite, expand_beta,
                    extract_counterplay_lift, extract_counterplay_lower, krom_lift_beta,
                    krom_lower_beta, krom_product, krom_shrink_beta, lowered_replay, lifted_replay,
                    project, shrink_beta)
from .thm43 import bco_ch_lower, canonical_krom_beta, glue, glue_check, lowered_ch_replay, run_thm43
from .scenarios import run_scenario

__all__ = [
    "ProductSpace", "product_of", "disjoint_family", "run_thm31", "Thm32ChoquetState",
    "Thm32State", "assemble_witness", "build_sigma_x", "build_sigma_y", "run_thm32",
    "thm32_state", "check_lift", "check_lower", "check_roundtrip", "duality_suite",
    "extract_counterplay_lift", "extract_counterplay_lower", "krom_lift_beta",
    "krom_lower_beta", "krom_product", "project", "expand_beta", "shrink_beta", "krom_shrink_beta",
    "lowered_replay", "lifted_replay", "bco_ch_lower", "canonical_krom_beta", "glue", "glue_check",
    "lowered_ch_replay", "run_thm43", "run_scenario",
]
