"""
globals.py

This module contains global constants which define enumeration guards,
CLI exit codes, result keywords and resource paths.

Created on 17 Oct 2026

@author: teampref contributors
"""

from os import path
from pathlib import Path

HOME = Path.home()
CONFIGFILE = path.join(HOME, "teamprefconfig.json")

# Enumeration guards (overridable via config file or CLI flags)
MAX_VARS = 4  # models_of: 2^(2^4) = 65536 teams is the desk-scale ceiling
MAX_TEAM_SIZE = 16  # disjunction split search enumerates 2^|X| subteams
MAX_STATES = 65536  # explicit models built from enumerations
SAT_MAX_VARS = 24
OLMS_MAX_VARS = 20
SUCC_MAX_M_CLASSICAL = 16
SUCC_MAX_M_TEAM = 12
SUCC_MAX_N_TEAM = 3

# Corpus defaults
CORPUS_DEPTH = 2

# Model modes
TEAM = "team"
CLASSICAL = "classical"

# Succinct order kinds
ORDER_GENERIC = "generic"
ORDER_RLEX = "rlex"

# Lexicographic circuit variants
LEX = "lex"
RLEX = "rlex"
STRICT = "strict"
NONSTRICT = "nonstrict"

# Bit preference for lexmax_model
ONE_FIRST = 1
ZERO_FIRST = 0

# Property names
TRIANGLE = "triangle"
STAR = "star"
SYSTEM_C = "system-c"
SYSTEM_P = "system-p"
OR_RULE = "or"

# Canonical model kinds
CANON_KINDS = ("sub", "sup", "pq", "circstar")

# Empty team literal
EMPTY_TEAM = "-"

# CLI exit codes
EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

# CLI output modes
MACHINE = "machine"
HUMAN = "human"
