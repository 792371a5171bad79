"""
Settings for the cohenalg toolkit.

Defaults shared by the command line front end and the verification suites.
Nothing here is read from the environment or from files: every run is fully
determined by its command line.
"""

import logging
from typing import Optional

from pydantic import BaseModel, Field

# Configuration
DEBUG = False

LOGGER_NAME = "cohenalg"

# Ring and shape defaults
DEFAULT_RING = "z"
DEFAULT_BLOCK_SHIFT = "verbatim"

# Randomized verification
DEFAULT_SEED = 0
DEFAULT_TRIALS = 20
EXPONENT_RANGE = (-5, 5)

# Brute-force limits
MAX_RIGIDITY_DEGREE = 3
MAX_RIGIDITY_DIM = 3

logger = logging.getLogger(LOGGER_NAME)


class Settings(BaseModel):
    """Run-wide defaults; the CLI builds one from its flags."""

    ring: str = Field(default=DEFAULT_RING, description="Ring spec: 'z' or 'zmod:<m>'")
    block_size: Optional[int] = Field(default=None, ge=1, description="Block size k; None infers it from the input")
    block_shift: str = Field(default=DEFAULT_BLOCK_SHIFT, pattern="^(verbatim|window)$")
    seed: int = DEFAULT_SEED
    trials: Optional[int] = Field(default=None, ge=1, description="None keeps each suite's own trial count")
    debug: bool = DEBUG
    json_output: bool = False


def configure_logging(debug: bool) -> None:
    """Route debug output to stderr; stdout is reserved for results."""
    global DEBUG
    DEBUG = debug
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("[DEBUG] %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if debug else logging.WARNING)


def debug_print(message: str) -> None:
    if DEBUG:
        logger.debug(message)
