"""
Numerical tolerances and defaults.

Every tolerance used by a check lives here; `Config` copies these values and
reports print them in their header.
"""

import math

# Causal classification: |z·z| <= CLS_SCALE * max(1, |z|_euclid^2) counts as zero.
CLS_SCALE = 1e-12

# Ratio threshold for "strictly Lipschitz" sampling (spacelike surfaces).
EPS_STRICT = 1e-9

# Margin for region-of-influence membership.
EPS_ROI = 1e-9

# Distance to a graph that still counts as "on the surface".
EPS_ON = 1e-9

# Line/surface fixed point.
FIXED_POINT_TOL = 1e-11
FIXED_POINT_BASE_ITER = 200
# Beyond this many contraction steps the solver switches to bisection.
FIXED_POINT_ITER_CAP = 5000

# Expanding bracket s in [-2^k, 2^k] for lightlike searches.
BRACKET_MAX_EXPONENT = 40

# SL(2,C) products are rescaled to det 1 after this many compositions.
RENORMALIZE_EVERY = 64
DET_TOL = 1e-10
UNITARY_TOL = 1e-10

# Highest spin handled by wigner_d.
J_MAX = 6

# Casimir parameter of the inducing representation and the mass window
# used by interval tests.
MU = 1.0
MASS_WINDOW = (0.3, 0.7)

# Velocities with |v| >= 1 - V_BOUNDARY are resampled.
V_BOUNDARY = 1e-6

MIN_BATCHES = 32
CHUNK_SIZE = 65536

FD_STEP = 1e-5

SET_DEPTH_LIMIT = 32
OPERATOR_DIM_LIMIT = 16

# Largest universe whose full lattice of ⊥-complete sets is enumerated.
CLOSED_SET_LIMIT = 20
MATRIX_TOL = 1e-12

# limsup |tau(x)|/|x| must stay below 1 - LIMSUP_MARGIN for a causal base.
LIMSUP_MARGIN = 1e-3
RADIUS_SCHEDULE = (1e2, 1e3, 1e4, 1e5, 1e6)

# Half width of the cube sampled by Lipschitz estimates.
SAMPLE_BOX = 10.0

# Grid fallback for influence regions without closed form. Slopes within
# ROI_SLOPE_MARGIN of 1 give no window bound; unbounded bases under them are
# searched around the nearest base node, found from cubes of half width
# ROI_SEARCH_RADIUS doubled up to ROI_EXPANSIONS times.
ROI_GRID_POINTS = 24
ROI_SEARCH_RADIUS = 50.0
ROI_SLOPE_MARGIN = 1e-3
ROI_EXPANSIONS = 17

VOL_UNIT_BALL = 4.0 * math.pi / 3.0

# Tolerance names accepted by --tolerance-file.
TOLERANCE_NAMES = (
    "cls_scale",
    "eps_strict",
    "eps_roi",
    "eps_on",
    "fixed_point_tol",
    "det_tol",
    "unitary_tol",
    "matrix_tol",
    "limsup_margin",
    "v_boundary",
    "fd_step",
)
