# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

core.py - Shared Utilities, Logging & Errors
Purpose: Centralize paths, JSON helpers, structured logging and the exception
hierarchy used across the numerical modules
"""

import json
import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path

from magtm.config import Config

# Get absolute path to magtm package directory
BASE_DIR = Path(__file__).parent.absolute()

# Project root directory
PROJECT_ROOT = BASE_DIR.parent

# Created on demand by setup_logging / the CLI, never at import
LOGS_DIR = Config.LOGS_DIR
OUTPUT_DIR = Config.OUTPUT_DIR


# ============================================================================
# Exceptions
# ============================================================================


class MagtmError(Exception):
    """Base class for every error raised by magtm."""


class DomainError(MagtmError, ValueError):
    """Argument outside the domain of the function (z <= 0, Gamma pole, t <= 0)."""


class ParameterError(MagtmError, ValueError):
    """Invalid parameter record."""


class ConvergenceError(MagtmError, RuntimeError):
    """Series or quadrature budget exhausted before reaching tolerance."""


class GridError(MagtmError, ValueError):
    """Grid or field shape mismatch, or wrong domain kind."""


class BoundarySupportError(MagtmError, ValueError):
    """Field is not compactly supported inside its grid."""


class ZeroFieldError(MagtmError, ValueError):
    """Quotient requested for an identically zero field."""


class RegimeError(MagtmError, ValueError):
    """Closed form requested outside its validity regime."""


class InvariantViolation(MagtmError, ValueError):
    """Parameter constraints of an admissible shift are violated."""


class InfiniteMeasureError(MagtmError, ValueError):
    """A superlevel set of infinite measure was found while rearranging."""


class DivergentTailError(MagtmError, ArithmeticError):
    """Tail integral of a rearrangement bound is not finite."""


class OnDiagonalError(MagtmError, ValueError):
    """Kernel evaluated at zero displacement."""


class CertificationError(MagtmError, RuntimeError):
    """Fitted constant does not dominate the held-out grid."""


class MissingCertificateError(MagtmError, LookupError):
    """No certificate covers the requested kernel or regime."""


# ============================================================================
# JSON File Operations
# ============================================================================


def load_json(filepath):
    filepath = Path(filepath)
    if not filepath.exists():
        return {}

    try:
        with open(filepath, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        log.error(f"Invalid JSON in {filepath}: {e}")
        return {}
    except OSError as e:
        log.error(f"Error reading {filepath}: {e}")
        return {}


def dump_json(data, indent=2):
    """Serialize with stable key order; identical data gives identical text."""
    return json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False) + "\n"


def save_json(filepath, data, indent=2):
    filepath = Path(filepath)
    try:
        filepath.parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, "w", encoding="utf-8", newline="\n") as f:
            f.write(dump_json(data, indent=indent))
        return True
    except OSError as e:
        log.error(f"Error writing {filepath}: {e}")
        return False


# ============================================================================
# Logging
# ============================================================================


class JSONFormatter(logging.Formatter):
    """Format log records as JSON(JSONL - one JSON object per line)"""

    def format(self, record):
        log_data = {
            "timestamp": datetime.now().isoformat() + "Z",
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.funcName,
            "line": record.lineno,
            "version": Config.APP_VERSION,
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        # Structured context from ContextLogger
        if hasattr(record, "extra_data"):
            log_data.update(record.extra_data)

        return json.dumps(log_data, default=str)


class ContextLogger:
    """
    Helper for adding context to log messages.
    Enables structured logging with extra fields (kernel id, grid hash, parameters).
    """

    def __init__(self, logger_name=None):
        self.logger = logging.getLogger(logger_name or "magtm")

    def log_with_context(self, level, message, **context):
        self.logger.log(getattr(logging, level.upper()), message, extra={"extra_data": context})

    def debug(self, message, **context):
        self.log_with_context("DEBUG", message, **context)

    def info(self, message, **context):
        """Log INFO with context."""
        self.log_with_context("INFO", message, **context)

    def warning(self, message, **context):
        """Log WARNING with context."""
        self.log_with_context("WARNING", message, **context)

    def error(self, message, **context):
        """Log ERROR with context."""
        self.log_with_context("ERROR", message, **context)

    def critical(self, message, **context):
        self.log_with_context("CRITICAL", message, **context)


def setup_logging(
    app_name=Config.APP_NAME,
    log_level=None,
    console_output=True,
    json_logs=Config.JSON_LOGS,
    text_logs=False,
    rotation_size_mb=10,
    backup_count=5,
    logs_dir=None,
):
    """Configure the root logger. Console output goes to stderr; stdout carries CLI tables."""
    if log_level is None:
        log_level = getattr(logging, Config.LOG_LEVEL, logging.INFO)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    # Clear existing handlers (avoid duplicates)
    root_logger.handlers.clear()

    if console_output:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(log_level)
        console_handler.setFormatter(
            logging.Formatter(
                fmt="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        root_logger.addHandler(console_handler)

    if json_logs or text_logs:
        target_dir = Path(logs_dir) if logs_dir else LOGS_DIR
        target_dir.mkdir(parents=True, exist_ok=True)

        if json_logs:
            json_handler = RotatingFileHandler(
                target_dir / f"{app_name}_json.log",
                maxBytes=rotation_size_mb * 1024 * 1024,
                backupCount=backup_count,
                encoding="utf-8",
            )
            json_handler.setLevel(log_level)
            json_handler.setFormatter(JSONFormatter())
            root_logger.addHandler(json_handler)

        if text_logs:
            text_handler = RotatingFileHandler(
                target_dir / f"{app_name}_text.log",
                maxBytes=rotation_size_mb * 1024 * 1024,
                backupCount=backup_count,
                encoding="utf-8",
            )
            text_handler.setLevel(log_level)
            text_handler.setFormatter(
                logging.Formatter(
                    fmt="%(asctime)s [%(levelname)s] %(name)s (%(filename)s:%(lineno)d): "
                    "%(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                )
            )
            root_logger.addHandler(text_handler)

        root_logger.debug(f"Log files: {target_dir}")

    return root_logger


log = logging.getLogger("magtm")


__all__ = [
    "BASE_DIR",
    "PROJECT_ROOT",
    "LOGS_DIR",
    "OUTPUT_DIR",
    "load_json",
    "save_json",
    "dump_json",
    "log",
    "setup_logging",
    "JSONFormatter",
    "ContextLogger",
    "Config",
    "MagtmError",
    "DomainError",
    "ParameterError",
    "ConvergenceError",
    "GridError",
    "BoundarySupportError",
    "ZeroFieldError",
    "RegimeError",
    "InvariantViolation",
    "InfiniteMeasureError",
    "DivergentTailError",
    "OnDiagonalError",
    "CertificationError",
    "MissingCertificateError",
]
