"""
Configuration module for the black-box checker

This module reads settings from environment variables (optionally from a
.env file) and turns them into the per-run options the checks use.
"""

import os
import sys
from dataclasses import dataclass, replace
from typing import Dict, List, Optional

from dotenv import load_dotenv

from src.liveness.bounds import DEFAULT_EXACT_THRESHOLD, BoundMode

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        return default


@dataclass(frozen=True)
class RunOptions:
    """Effective settings for one check."""

    timeout_ms: int = 5000
    bound_mode: BoundMode = BoundMode.AUTO
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD
    use_cache: bool = True
    state_bound: Optional[int] = None
    trace_path: Optional[str] = None
    log_path: Optional[str] = None
    dot_directory: Optional[str] = None

    def with_overrides(self, **overrides) -> "RunOptions":
        """Copy with every override that is not None applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


class CheckerConfig:
    """Configuration class for the checker."""

    def __init__(self):
        """Initialize configuration from environment variables."""
        load_dotenv()

        self.timeout_ms = _int_env("BBCHECK_TIMEOUT_MS", 5000)
        self.exact_threshold = _int_env("BBCHECK_EXACT_THRESHOLD", DEFAULT_EXACT_THRESHOLD)
        self.bound_mode = os.getenv("BBCHECK_BOUND_MODE", BoundMode.AUTO.value)
        self.use_cache = os.getenv("BBCHECK_CACHE", "1").strip().lower() not in ("0", "false", "no", "off")
        self.output_directory = os.getenv("BBCHECK_OUTPUT_DIRECTORY", "verification_output")
        self.log_level = os.getenv("BBCHECK_LOG_LEVEL", "WARNING").upper()

    def validate_config(self) -> Dict[str, List[str]]:
        """Validate configuration and return any invalid settings."""
        errors = []
        warnings = []

        if self.timeout_ms <= 0:
            errors.append("BBCHECK_TIMEOUT_MS must be a positive number of milliseconds")
        if self.bound_mode not in {mode.value for mode in BoundMode}:
            errors.append(f"BBCHECK_BOUND_MODE must be one of auto, exact, over (got {self.bound_mode!r})")
        if self.exact_threshold < 1:
            errors.append("BBCHECK_EXACT_THRESHOLD must be at least 1")

        if self.exact_threshold > 20:
            warnings.append("BBCHECK_EXACT_THRESHOLD above 20 makes exact bounds very slow on dense graphs")
        if not self.use_cache:
            warnings.append("BBCHECK_CACHE is off - every experiment resets and replays the component")
        if self.log_level not in _LOG_LEVELS:
            warnings.append(f"BBCHECK_LOG_LEVEL {self.log_level!r} is unknown, using WARNING")

        return {"errors": errors, "warnings": warnings}

    def run_options(self, **overrides) -> RunOptions:
        """Per-run options from the configuration, with command-line overrides applied."""
        base = RunOptions(
            timeout_ms=self.timeout_ms,
            bound_mode=BoundMode(self.bound_mode) if self.bound_mode in {m.value for m in BoundMode} else BoundMode.AUTO,
            exact_threshold=self.exact_threshold,
            use_cache=self.use_cache,
        )
        return base.with_overrides(**overrides)


# Global config instance
config = CheckerConfig()


# Utility functions
def get_config() -> CheckerConfig:
    """Get the global configuration instance."""
    return config


def validate_setup() -> bool:
    """Validate the setup and print any issues."""
    validation = config.validate_config()

    if validation["errors"]:
        print("Configuration Errors:", file=sys.stderr)
        for error in validation["errors"]:
            print(f"   - {error}", file=sys.stderr)
        print("\nPlease fix these errors before running the checker.", file=sys.stderr)
        return False

    if validation["warnings"]:
        print("Configuration Warnings:", file=sys.stderr)
        for warning in validation["warnings"]:
            print(f"   - {warning}", file=sys.stderr)

    return True
