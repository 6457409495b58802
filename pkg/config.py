#!/usr/bin/env python3
"""
Configuration and constants for betadim
"""

import os
from fractions import Fraction

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Rigorous arithmetic budget
PRECISION_BITS = int(os.getenv("BETADIM_PRECISION_BITS", "256"))
MAX_REFINE_ROUNDS = int(os.getenv("BETADIM_MAX_REFINE_ROUNDS", "64"))
BETA_N_BITS = int(os.getenv("BETADIM_BETA_N_BITS", "128"))

# Defining polynomials above this degree are used unfactored
FACTOR_DEGREE_LIMIT = int(os.getenv("BETADIM_FACTOR_DEGREE_LIMIT", "48"))

# Symbolic dynamics
PARRY_HORIZON = int(os.getenv("BETADIM_PARRY_HORIZON", "64"))
AUTOMATON_DEPTH = int(os.getenv("BETADIM_AUTOMATON_DEPTH", "64"))
ENUMERATION_CAP = int(os.getenv("BETADIM_ENUMERATION_CAP", "200000"))

# Exponent estimation
TAIL_WINDOW = Fraction(os.getenv("BETADIM_TAIL_WINDOW", "1/3"))
# The window reaches back to the last new best approximation after this fraction
TAIL_LOOKBACK = Fraction(os.getenv("BETADIM_TAIL_LOOKBACK", "1/16"))

# Cantor construction
DEFAULT_SEED = int(os.getenv("BETADIM_SEED", "20240601"))
FREE_FILL_POLICIES = ("random", "zeros", "word")

# Dimension formulas
V_CAP_SPAN = 50  # search window above v̂/(1−v̂), scaled by (1 + lower end)

LOG_LEVEL = os.getenv("BETADIM_LOG_LEVEL", "WARNING")

OUTPUT_FORMATS = ("jsonl", "digits", "csv")
