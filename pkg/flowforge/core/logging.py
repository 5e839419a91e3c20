"""Structured logging configuration."""

from __future__ import annotations

import logging
import sys

import structlog

from flowforge.core.config import settings


def _level() -> int:
    if settings.LOG_LEVEL is not None:
        return int(getattr(logging, settings.LOG_LEVEL))
    return logging.DEBUG if settings.ENVIRONMENT == "development" else logging.INFO


def _stderr_logger(*_: object) -> structlog.PrintLogger:
    return structlog.PrintLogger(sys.stderr)


def setup_logging() -> None:
    """Configure structured logging.

    Log lines go to whatever ``sys.stderr`` is when a logger is created, so
    data written to stdout by the CLI stays machine-readable.
    """
    shared_processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if settings.ENVIRONMENT == "development":
        renderer = structlog.dev.ConsoleRenderer()
    else:
        renderer = structlog.processors.JSONRenderer()

    structlog.configure(
        processors=shared_processors + [renderer],
        wrapper_class=structlog.make_filtering_bound_logger(_level()),
        context_class=dict,
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=settings.ENVIRONMENT == "production",
    )

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=_level())


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """Get a structured logger instance."""
    return structlog.get_logger(name)
