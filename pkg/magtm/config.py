# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""
config.py - Application Configuration
Purpose: Define numerical defaults, paths and logging settings read from the environment
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


# Malformed values fall back to the default here; ConfigValidator reports them at startup.
def _env_float(name, default):
    try:
        return float(os.getenv(name, default))
    except ValueError:
        return float(default)


def _env_int(name, default):
    try:
        return int(os.getenv(name, default))
    except ValueError:
        return int(default)


class Config:
    APP_NAME = os.getenv("MAGTM_APP_NAME", "magtm")
    APP_VERSION = "1.0.0"
    LOG_LEVEL = os.getenv("MAGTM_LOG_LEVEL", "INFO").upper()
    JSON_LOGS = os.getenv("MAGTM_JSON_LOGS", "false").lower() == "true"

    PROJECT_ROOT = Path(__file__).parent.parent.absolute()
    LOGS_DIR = Path(os.getenv("MAGTM_LOG_DIR", str(PROJECT_ROOT / "logs")))
    OUTPUT_DIR = Path(os.getenv("MAGTM_OUTPUT_DIR", str(PROJECT_ROOT / "output")))

    # Evaluation policy defaults
    REL_TOL = _env_float("MAGTM_REL_TOL", "1e-14")
    MAX_TERMS = _env_int("MAGTM_MAX_TERMS", "20000")
    QUAD_POINTS = _env_int("MAGTM_QUAD_POINTS", "200")

    # Kernel truncation and certificate fitting
    TAIL_TOL = _env_float("MAGTM_TAIL_TOL", "1e-16")
    FIT_MARGIN = _env_float("MAGTM_FIT_MARGIN", "0.5")

    SEED = _env_int("MAGTM_SEED", "20250101")
    CACHE_SIZE = _env_int("MAGTM_CACHE_SIZE", "256")
