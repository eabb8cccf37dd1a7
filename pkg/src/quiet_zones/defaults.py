"""Default values for quiet-zones simulations."""

# Evaluation grid: 2 kHz sampling, 4096-point DFT.
DEFAULT_FS_HZ = 2000.0
DEFAULT_M_POINTS = 4096

# Medium. Wavelength-relative results do not depend on it.
DEFAULT_C_MPS = 343.0

# Scenario: secondary source at the origin, cancellation point 20 cm away.
DEFAULT_R0 = (0.2, 0.0)
DEFAULT_GAIN_RATIO = 3.0
DEFAULT_EXCLUSION_RADIUS = 0.01

# Zone of quiet threshold.
DEFAULT_THRESHOLD_DB = -10.0
DB_FLOOR = -100.0

# 1-D sweeps over the distance from the cancellation point.
DEFAULT_MAX_DELTA_R = 0.5
DEFAULT_STEP = 0.001
DEFAULT_ORACLE_STEP = 0.05

# 2-D map: x_min, x_max, y_min, y_max, spacing (meters).
DEFAULT_GRID = (0.05, 0.45, -0.2, 0.2, 0.0025)
GRID_DECIMALS = 12

# Direction-sampling oracle.
DEFAULT_N_DIRECTIONS = 1_000_000
DEFAULT_SEED = 0
DEFAULT_ORACLE_TOLERANCE = 0.01
DEFAULT_BATCH_SIZE = 65_536
RNG_ALGORITHM = "PCG64"
# Lag table step, as a fraction of the shortest period on the grid.
LAG_TABLE_PHASE_STEP = 0.01

# Root finding.
ROOT_TOLERANCE = 1e-9
BISECTION_XTOL = 1e-13

# Largest kernel block evaluated at once (elements).
CHUNK_ELEMENTS = 1 << 22

# A loudspeaker of radius a behaves like a monopole while ka < 0.5.
MONOPOLE_KA_LIMIT = 0.5
MONOPOLE_POWER_WARNING = 0.01

CSV_FORMAT = "%.12g"
ENV_PREFIX = "QUIET_ZONES_"
DEFAULT_LOG_LEVEL = "WARNING"
