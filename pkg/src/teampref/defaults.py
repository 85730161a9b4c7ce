"""
defaults.py

This module defines default guard and corpus settings, used where these
cannot be read from a json config file in the user's home directory.

Amend teamprefconfig.json (or pass the equivalent CLI flags) to raise
the enumeration guards on a larger machine.

Created on 17 Oct 2026

@author: teampref contributors
"""

from teampref.globals import (
    CORPUS_DEPTH,
    MAX_STATES,
    MAX_TEAM_SIZE,
    MAX_VARS,
    SUCC_MAX_M_CLASSICAL,
    SUCC_MAX_M_TEAM,
    SUCC_MAX_N_TEAM,
)

DEFAULT_CONFIG = {
    "max_vars": MAX_VARS,
    "max_team_size": MAX_TEAM_SIZE,
    "max_states": MAX_STATES,
    "succ_max_m_classical": SUCC_MAX_M_CLASSICAL,
    "succ_max_m_team": SUCC_MAX_M_TEAM,
    "succ_max_n_team": SUCC_MAX_N_TEAM,
    "corpus_depth": CORPUS_DEPTH,
    "strict_triangle": False,
    "log_level": "WARNING",
}
