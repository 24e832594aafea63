"""Referee-validated Banach-Mazur, strong Choquet and Gruenhage games."""

from .baire_oracle import dense_opens, finite_space_baire_oracle
from .core import (ALPHA, BETA, UNDECIDED, GameKind, History, Outcome, Strategy, Transcript,
                   adjudicate, encode_move, gruenhage_run, legal_move, run_game,
                   transcript_lines, verify_beta_evidence)
from .strategies import (STRATEGY_NAMES, bm_rationals_beta_strategy, echo_alpha, echo_beta,
                         halver_alpha, make_strategy, random_alpha, random_beta, rational_beta,
                         refine_alpha, remark_tactic, w_player)

__all__ = [
    "dense_opens", "finite_space_baire_oracle", "ALPHA", "BETA", "UNDECIDED", "GameKind",
    "History", "Outcome", "Strategy", "Transcript", "adjudicate", "encode_move",
    "gruenhage_run", "legal_move", "run_game", "transcript_lines", "verify_beta_evidence",
    "STRATEGY_NAMES", "bm_rationals_beta_strategy", "echo_alpha", "echo_beta", "halver_alpha",
    "make_strategy", "random_alpha", "random_beta", "rational_beta", "refine_alpha",
    "remark_tactic", "w_player",
]
