"""Application constants."""

# Application information
APP_NAME = "symframe"
APP_AUTHOR = "symframe Development Team"

# Scalar modes
SCALAR_RATIONAL = "rational"
SCALAR_FLOAT = "float"
SCALAR_MODES = (SCALAR_RATIONAL, SCALAR_FLOAT)

# Numerical thresholds
DEFAULT_RANK_TOL = 1e-9  # relative to the largest singular value
DEFAULT_SUPPORT_TOL = 1e-8  # relative to max |omega_e|
DEFAULT_SYMMETRY_TOL = 1e-12
DEFAULT_RESIDUAL_TOL = 1e-9  # relative to the polynomial's term scale
DEFAULT_DIMENSION = 2

# Random sampling
GENERIC_NUMERATOR_BOUND = 10**6
GENERIC_DENOMINATOR = 10**3
DEFAULT_SEED = 0
DEFAULT_GENERIC_TRIALS = 3

# Resource caps
AUT_GROUP_CAP = 10**4
ORBIT_PRODUCT_CAP = 10**6
PURE_CONDITION_MAX_VERTICES = 8

# Pure condition and variety sampling
SAMPLER_RETRY_CAP = 50
IRREDUCIBILITY_TRIALS = 3
PROFILE_TRIALS = 5
INVARIANCE_TRIALS = 20

# Rubber banding
WEIGHT_MIN = 1
WEIGHT_MAX = 10
WEIGHT_DENOMINATOR = 10

# Export formats
EXPORT_FORMATS = {
    "json": "JSON report (*.json)",
    "svg": "SVG 1.1 drawing (*.svg)",
}

# Stress colouring for SVG output
COLOR_POSITIVE = "#0000ff"
COLOR_NEGATIVE = "#ff0000"
COLOR_ZERO = "#808080"
COLOR_VERTEX = "#000000"
COLOR_AXIS = "#2ca02c"
