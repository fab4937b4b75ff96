"""
Runtime configuration for the simple bundles toolkit.

Values are read once from the environment (optionally from a .env file) and
exposed as module-level constants. Command-line flags override them.
"""

import os
import logging
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def get_default_out_dir() -> str:
    """Get the default output directory relative to the project root."""
    project_root = Path(__file__).parent.parent
    return str(project_root / "70-data")


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


SBN_THREADS = int(os.getenv('SBN_THREADS', '1'))
SBN_ENUM_CAP = int(os.getenv('SBN_ENUM_CAP', '1000000'))
SBN_MAX_PATH_COUNT = int(os.getenv('SBN_MAX_PATH_COUNT', str(2**63 - 1)))
SBN_OUT_DIR = os.getenv('SBN_OUT_DIR', get_default_out_dir())
SBN_LOG_LEVEL = os.getenv('SBN_LOG_LEVEL', 'INFO').upper()
SBN_USE_PROCESSES = _env_bool('SBN_USE_PROCESSES', False)

# Tolerances shared by the flow computations
FLOW_TOLERANCE = 1e-9
EQUALITY_TOLERANCE = 1e-12

# Configure logging
logging.basicConfig(level=getattr(logging, SBN_LOG_LEVEL, logging.INFO))
logger = logging.getLogger(__name__)

if SBN_THREADS < 1:
    logger.warning(f"SBN_THREADS={SBN_THREADS} is not positive, using 1")
    SBN_THREADS = 1
