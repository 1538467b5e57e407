"""Utility modules for infodist."""

from infodist.utils.logging import (
    get_logger,
    get_log_buffer,
    LogLevel,
    LogEntry,
    LogBuffer,
    format_metadata,
    AppLogger,
    linalg_logger,
    model_logger,
    measurement_logger,
    fisher_logger,
    divergence_logger,
    certify_logger,
    cli_logger,
)

__all__ = [
    "get_logger",
    "get_log_buffer",
    "LogLevel",
    "LogEntry",
    "LogBuffer",
    "format_metadata",
    "AppLogger",
    "linalg_logger",
    "model_logger",
    "measurement_logger",
    "fisher_logger",
    "divergence_logger",
    "certify_logger",
    "cli_logger",
]
