# settings.py
import os
import logging

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()


def _env_number(name: str, default: str, kind):
    raw = os.getenv(name, default)
    try:
        return kind(raw)
    except ValueError:
        logger.error(f"{name}={raw!r} is not a valid {kind.__name__}")
        raise RuntimeError(f"{name} must be a {kind.__name__}, got {raw!r}")


# Environment variables - all optional, defaults below
DEFAULT_TOLERANCE = _env_number("KUNIFORM_TOLERANCE", "1e-10", float)
DEFAULT_THREADS = _env_number("KUNIFORM_THREADS", "1", int)
DEFAULT_SEED = _env_number("KUNIFORM_SEED", "0", int)
DEFAULT_RESTARTS = _env_number("KUNIFORM_RESTARTS", "16", int)
EXHAUSTIVE_BIT_BUDGET = _env_number("KUNIFORM_EXHAUSTIVE_BITS", "20", int)
LOG_LEVEL = os.getenv("KUNIFORM_LOG_LEVEL", "WARNING").upper()


def validate_settings():
    logger.info("Validating settings...")

    if DEFAULT_TOLERANCE <= 0:
        logger.error("KUNIFORM_TOLERANCE must be positive")
        raise RuntimeError("KUNIFORM_TOLERANCE must be positive")
    if DEFAULT_THREADS < 1:
        logger.error("KUNIFORM_THREADS must be at least 1")
        raise RuntimeError("KUNIFORM_THREADS must be at least 1")
    if DEFAULT_RESTARTS < 1:
        logger.error("KUNIFORM_RESTARTS must be at least 1")
        raise RuntimeError("KUNIFORM_RESTARTS must be at least 1")
    if EXHAUSTIVE_BIT_BUDGET < 1:
        logger.error("KUNIFORM_EXHAUSTIVE_BITS must be at least 1")
        raise RuntimeError("KUNIFORM_EXHAUSTIVE_BITS must be at least 1")
    if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        logger.error(f"KUNIFORM_LOG_LEVEL={LOG_LEVEL!r} is not a log level")
        raise RuntimeError(f"KUNIFORM_LOG_LEVEL must be a logging level name, got {LOG_LEVEL!r}")

    logger.info("Settings validated successfully")
