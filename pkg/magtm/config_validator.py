# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""
config_validator.py - Configuration Validation

Validates the MAGTM_* environment variables before a CLI command runs.
Malformed numbers are reported here rather than silently replaced by defaults.
"""

import os
import sys
from typing import List, Tuple

from magtm.core import ContextLogger

USAGE_EXIT_CODE = 2

context_log = ContextLogger("magtm.config")


class ConfigValidator:
    """Validate environment configuration before a run."""

    # name -> (type, lower bound, upper bound, description); bounds are exclusive
    NUMERIC_VARS = {
        "MAGTM_REL_TOL": (float, 0.0, 1.0, "default relative tolerance of special functions"),
        "MAGTM_MAX_TERMS": (int, 0, None, "series term budget"),
        "MAGTM_QUAD_POINTS": (int, 0, None, "quadrature subdivision limit"),
        "MAGTM_TAIL_TOL": (float, 0.0, 1.0, "kernel truncation tail tolerance"),
        "MAGTM_FIT_MARGIN": (float, None, None, "relative margin of fitted constants"),
        "MAGTM_SEED": (int, None, None, "seed of randomized suites"),
        "MAGTM_CACHE_SIZE": (int, 0, None, "LRU cache capacity"),
    }

    FORMAT_VALIDATORS = {
        "MAGTM_LOG_LEVEL": {
            "allowed": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
            "description": "Log level must be one of: DEBUG, INFO, WARNING, ERROR, CRITICAL",
            "normalize": str.upper,
        },
        "MAGTM_JSON_LOGS": {
            "allowed": ["true", "false"],
            "description": "MAGTM_JSON_LOGS must be 'true' or 'false'",
            "normalize": str.lower,
        },
    }

    @staticmethod
    def _validate_numeric_vars() -> List[str]:
        """Check that numeric variables parse and lie in range."""
        errors = []

        for var_name, (kind, lower, upper, description) in ConfigValidator.NUMERIC_VARS.items():
            raw = os.getenv(var_name)
            if raw is None or raw == "":
                continue

            try:
                value = kind(raw)
            except ValueError:
                errors.append(
                    f"INVALID: {var_name} = '{raw}' is not a valid {kind.__name__}\n"
                    f"  Description: {description}"
                )
                continue

            if lower is not None and not value > lower:
                errors.append(f"INVALID: {var_name} = {raw} must be > {lower}")
            elif upper is not None and not value < upper:
                errors.append(f"INVALID: {var_name} = {raw} must be < {upper}")

        return errors

    @staticmethod
    def _validate_format_vars() -> List[str]:
        """Validate enumerated variables."""
        errors = []

        for var_name, config in ConfigValidator.FORMAT_VALIDATORS.items():
            value = os.getenv(var_name)
            if not value:
                continue

            if config["normalize"](value) not in config["allowed"]:
                errors.append(f"INVALID: {var_name} = '{value}'\n" f"  {config['description']}")

        return errors

    @staticmethod
    def _validate_margin() -> List[str]:
        raw = os.getenv("MAGTM_FIT_MARGIN")
        try:
            if raw and float(raw) < 0:
                return [f"INVALID: MAGTM_FIT_MARGIN = {raw} must be >= 0"]
        except ValueError:
            pass
        return []

    @staticmethod
    def validate_startup() -> Tuple[bool, List[str]]:
        errors = []
        errors.extend(ConfigValidator._validate_numeric_vars())
        errors.extend(ConfigValidator._validate_format_vars())
        errors.extend(ConfigValidator._validate_margin())
        return len(errors) == 0, errors

    @staticmethod
    def validate_and_exit_if_invalid() -> None:
        """Validate configuration and exit with the usage code if invalid."""
        is_valid, errors = ConfigValidator.validate_startup()

        if not is_valid:
            print("\n" + "=" * 70, file=sys.stderr)
            print("CONFIGURATION VALIDATION FAILED", file=sys.stderr)
            print("=" * 70, file=sys.stderr)

            for error in errors:
                print(f"\n✗ {error}", file=sys.stderr)

            print("\n" + "=" * 70 + "\n", file=sys.stderr)

            context_log.critical("Configuration validation failed; refusing to run.", n_errors=len(errors))
            sys.exit(USAGE_EXIT_CODE)

    @staticmethod
    def print_config_summary() -> None:
        """Print the effective configuration."""
        from magtm.config import Config

        print("\n" + "=" * 70)
        print("CONFIGURATION SUMMARY")
        print("=" * 70)

        print("\nApplication Settings:")
        print(f"  APP_NAME: {Config.APP_NAME}")
        print(f"  APP_VERSION: {Config.APP_VERSION}")

        print("\nNumerical Settings:")
        print(f"  REL_TOL: {Config.REL_TOL}")
        print(f"  MAX_TERMS: {Config.MAX_TERMS}")
        print(f"  QUAD_POINTS: {Config.QUAD_POINTS}")
        print(f"  TAIL_TOL: {Config.TAIL_TOL}")
        print(f"  FIT_MARGIN: {Config.FIT_MARGIN}")
        print(f"  SEED: {Config.SEED}")
        print(f"  CACHE_SIZE: {Config.CACHE_SIZE}")

        print("\nLogging Settings:")
        print(f"  LOG_LEVEL: {Config.LOG_LEVEL}")
        print(f"  JSON_LOGS: {Config.JSON_LOGS}")
        print(f"  LOGS_DIR: {Config.LOGS_DIR}")
        print(f"  OUTPUT_DIR: {Config.OUTPUT_DIR}")

        print("\n" + "=" * 70 + "\n")


def validate_config() -> None:
    """Validate configuration at startup. Exit if invalid."""
    ConfigValidator.validate_and_exit_if_invalid()


__all__ = ["ConfigValidator", "validate_config", "USAGE_EXIT_CODE"]
