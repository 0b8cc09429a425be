"""Runtime configuration, read from the environment when used."""
import os

DEFAULT_DATABASE_URL = "sqlite:///./supcomp_runs.db"


def float_tolerance() -> float:
    return float(os.getenv("SUPCOMP_FLOAT_TOLERANCE", "1e-9"))


def independence_limit() -> int:
    return int(os.getenv("SUPCOMP_INDEPENDENCE_LIMIT", "20"))


def harness_limit() -> int:
    return int(os.getenv("SUPCOMP_HARNESS_LIMIT", "20"))


def database_url() -> str:
    return os.getenv("SUPCOMP_DATABASE_URL", DEFAULT_DATABASE_URL)


def database_echo() -> bool:
    return os.getenv("SUPCOMP_DB_ECHO", "").lower() in ("1", "true", "yes")


def log_level() -> str:
    return os.getenv("SUPCOMP_LOG_LEVEL", "WARNING").upper()
