import os
import logging
from dataclasses import dataclass
from dotenv import load_dotenv

VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
MIN_DIGIT_BUDGET = 1000


@dataclass(frozen=True)
class Config:
    """Application defaults, overridable per invocation by CLI flags."""
    # --- Output ---
    log_level: str = "INFO"
    json_output: bool = False
    output_file: str | None = None

    # --- Computation ---
    precision: int = 30  # decimal digits for error reporting
    digit_budget: int = 500_000  # cap on decimal digits of moduli such as k^(k n^2)
    jobs: int | None = None  # None = os.cpu_count()


def _read_int(env_name: str, default: int, minimum: int) -> int:
    raw = os.getenv(env_name, "")
    if not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError as e:
        raise ValueError(f"Environment variable '{env_name}' must be an integer, got '{raw}'.") from e
    if value < minimum:
        raise ValueError(f"Environment variable '{env_name}' must be >= {minimum}, got {value}.")
    return value


def load_config() -> Config:
    """
    Loads configuration from environment variables (and a local .env file),
    returning a Config object.

    Returns:
        Config: The loaded configuration.

    Raises:
        ValueError: If a numeric variable is malformed or out of range.
    """
    load_dotenv()

    # --- Log Level ---
    log_level_str = os.getenv("KRONFORM_LOG_LEVEL", "INFO").upper()
    if log_level_str not in VALID_LOG_LEVELS:
        logging.warning(
            f"Invalid log level '{log_level_str}' specified. Using 'INFO'."
        )
        log_level_str = "INFO"

    # --- Output ---
    output_mode = os.getenv("KRONFORM_OUTPUT", "table").strip().lower()
    if output_mode not in ("json", "table"):
        logging.warning(f"Invalid output mode '{output_mode}' specified. Using 'table'.")
        output_mode = "table"

    output_file_env = os.getenv("KRONFORM_OUTPUT_FILE")
    output_file = output_file_env if output_file_env else None

    # --- Computation ---
    precision = _read_int("KRONFORM_PRECISION", 30, 1)
    digit_budget = _read_int("KRONFORM_DIGIT_BUDGET", 500_000, MIN_DIGIT_BUDGET)
    jobs_env = os.getenv("KRONFORM_JOBS")
    jobs = _read_int("KRONFORM_JOBS", 1, 1) if jobs_env else None

    logging.debug(
        f"Loaded config: precision={precision}, digit_budget={digit_budget}, jobs={jobs}, output={output_mode}"
    )

    return Config(
        log_level=log_level_str,
        json_output=output_mode == "json",
        output_file=output_file,
        precision=precision,
        digit_budget=digit_budget,
        jobs=jobs,
    )
