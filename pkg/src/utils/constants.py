"""
Constants used throughout the tame-representation toolkit.
"""
from fractions import Fraction

# Polytope backend tolerance
EPS = 1e-9

# Dimensions
MAX_POLYTOPE_DIMENSION = 3
MAX_SECTION_DIMENSION = 3

# Monte-Carlo oracle budgets
MC_VOLUME_SAMPLES = 10**6
TRANSLATE_UNION_TRIALS = 10**3
QUANTIFIER_ORACLE_PROBES = 10**4
QUANTIFIER_ORACLE_GRID = 9

# Probe grid points per axis for polytope quantifier checks
PROBE_GRID_RESOLUTION = 6

# Sampled thinness for polytopes
THINNESS_RANDOM_SAMPLES = 200

# Exhaustive search caps
EXACT_COLORING_CAP = 9
EXACT_SEPARATOR_CAP = 16

# A separator is balanced when every component has at most this share of n
BALANCE_FRACTION = Fraction(2, 3)

# Report formatting
CSV_SIGNIFICANT_DIGITS = 12

# Environment
THREADS_ENV_VAR = "TAME_THREADS"

# Shape JSON kinds
KIND_BOX = "box"
KIND_POLYTOPE = "polytope"
KIND_BOX_UNION = "box_union"

# Exit codes
EXIT_OK = 0
EXIT_OPERATIONAL_ERROR = 1
EXIT_VIOLATION = 2
