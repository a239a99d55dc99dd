"""
core/config.py
---------------
Global configuration for CongruenceLab.

This file centralizes the numeric defaults, caps and identifiers used
across the lab (series generation, scanning, certification, P¹ modules,
command-line exit codes).

Editing these values changes the defaults of every command without
modifying any logic in other modules.
"""

# ============================================================
# Scanning / certificates
# ============================================================

DEFAULT_SUPPORT_MIN = 25        # least number of tested indices per progression
DEFAULT_MAX_MODULUS = 100       # scan moduli 1..M_max
DEFAULT_SCAN_BOUND = 10_000     # indices n <= bound are inspected

# Rule identifiers recorded in DerivedByRule evidence
RULE_GAP = "B.1"
RULE_SHRINK = "B.2"
RULE_REMOVE_PRIME = "B.3"
RULE_SQUARE_CLASS = "P3.2"
RULE_SHRINK_SF8 = "P3.2-sf"

# ============================================================
# Forms / linear algebra
# ============================================================

DEFAULT_WEIGHT_CAP = 4000       # u_ell_preimage gives up above this weight
BASIS_SLACK = 8                 # extra coefficients beyond the Sturm window
MIN_BASIS_ELL = 5               # bases mod 2 and 3 degenerate

# ============================================================
# Table reproduction defaults
# ============================================================

TABLE_ELLS = (3, 5, 7, 11)
TABLE_PRIMES = (2, 3, 5, 7, 11)
TABLE_COUNT = 2
TABLE_VERIFY_BOUND = 100_000

# ============================================================
# Series arithmetic
# ============================================================

# Below this operand length a direct numpy convolution beats the FFT.
DIRECT_CONVOLUTION_MAX = 64

# Largest float64 FFT product bound (sum of coefficient products) that is
# still rounded exactly; larger inputs are split into digits.
FFT_EXACT_BOUND = 2 ** 42

# partition_mod switches from the pentagonal recurrence to series inversion
PARTITION_RECURRENCE_MAX = 20_000

# ============================================================
# P¹ modules
# ============================================================

P1_MAX_POINTS = 200_000
EXT_MAX_DEGREE = 24

# ============================================================
# Command line
# ============================================================

EXIT_OK = 0
EXIT_DISCREPANCY = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

CACHE_ENV_VAR = "CONGRUENCE_LAB_CACHE"
