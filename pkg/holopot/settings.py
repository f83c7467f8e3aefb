"""Configuration and shared settings for the holopot toolkit."""

import os

from dotenv import load_dotenv

load_dotenv()

# Sampling
DEFAULT_SEED = int(os.getenv("HOLOPOT_SEED", "20240917"))
DEFAULT_SAMPLE_COUNT = int(os.getenv("HOLOPOT_SAMPLE_COUNT", "64"))
DEFAULT_RADIAL_SCHEDULE = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999)
INTERIOR_RADIAL_SCHEDULE = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

# Algebra
MAX_POLARIZATION_ARITY = int(os.getenv("HOLOPOT_MAX_POLARIZATION_ARITY", "12"))
DEFAULT_TRUNCATION_ORDER = int(os.getenv("HOLOPOT_TRUNCATION_ORDER", "16"))
FLOAT_SCRUB_RELATIVE = 1e-14

# Numerics
NUMERIC_EXACT_TOLERANCE = 1e-6
DERIVATIVE_STEP_FACTOR = 1e-4
CAUCHY_POINTS = 8
CAUCHY_RADIUS_FACTOR = 1e-2
DEFAULT_DERIVATIVE_STEP = 1e-4
LIPSCHITZ_PAIR_STEP_FACTOR = 1e-3
LIPSCHITZ_PAIRWISE_POINTS = 64
BIDISK_ANGLE_STEPS = 32
BIDISK_RADIAL_FRACTIONS = (0.25, 0.5, 0.75, 1.0)

LOG_LEVEL = os.getenv("HOLOPOT_LOG_LEVEL", "WARNING").upper()


def get_optimal_workers() -> int:
    """Worker count for the thread pool: CPU count + 1, capped."""
    cpu_count = os.cpu_count() or 1
    return min(cpu_count + 1, 8)


MAX_WORKERS = int(os.getenv("HOLOPOT_MAX_WORKERS", str(get_optimal_workers())))
ENABLE_PARALLEL_PROCESSING = os.getenv("HOLOPOT_ENABLE_PARALLEL", "true").lower() == "true"
