"""
Observability configuration for the qkv verification toolkit.

Provides:
- Structured logging via structlog (console or JSON, always on stderr)
- Prometheus metrics for check runs and basis construction
- Check context propagation (check_id, n)
"""
import logging
import sys
import time
from contextvars import ContextVar
from functools import wraps
from typing import Callable, Optional

import structlog
from prometheus_client import Counter, Histogram

from src.config import Config

# =============================================================================
# CONTEXT VARIABLES - For check context propagation across worker threads
# =============================================================================
check_id_var: ContextVar[str] = ContextVar("check_id", default="")
n_var: ContextVar[int] = ContextVar("n", default=0)


def bind_context(check_id: Optional[str] = None, n: Optional[int] = None) -> None:
    """Bind context variables for the current check."""
    if check_id:
        check_id_var.set(check_id)
    if n:
        n_var.set(n)


def get_context() -> dict:
    """Get current context for logging."""
    ctx = {}
    if check_id := check_id_var.get():
        ctx["check_id"] = check_id
    if n := n_var.get():
        ctx["n"] = n
    return ctx


# =============================================================================
# STRUCTLOG CONFIGURATION
# =============================================================================
def add_context_processor(
    logger: logging.Logger, method_name: str, event_dict: dict
) -> dict:
    """Add context variables to every log entry."""
    event_dict.update(get_context())
    return event_dict


def configure_logging(json_format: bool = False, log_level: str = "WARNING") -> None:
    """
    Configure structured logging with structlog.

    Logs are written to stderr; stdout carries reports only.

    Args:
        json_format: If True, output JSON logs. If False, output colored console logs.
        log_level: Minimum log level (DEBUG, INFO, WARNING, ERROR).
    """
    shared_processors = [
        structlog.contextvars.merge_contextvars,
        add_context_processor,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
    ]

    if json_format:
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ]
    else:
        processors = shared_processors + [
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, log_level.upper(), logging.WARNING)
        ),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str = "qkv") -> structlog.BoundLogger:
    """Get a logger instance bound with the given name."""
    return structlog.get_logger(name)


# =============================================================================
# PROMETHEUS METRICS
# =============================================================================

CHECKS_RUN = Counter(
    "qkv_checks_total",
    "Total verification checks executed",
    ["check_id", "status"],  # status: pass/fail/reported
)
CHECK_DURATION = Histogram(
    "qkv_check_duration_seconds",
    "Duration of a single (check_id, n) run",
    ["check_id"],
    buckets=[0.01, 0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0, 120.0, 300.0],
)
BASIS_BUILDS = Counter(
    "qkv_basis_builds_total",
    "Primitive bases computed (cache misses)",
    ["space", "degree"],
)
BASIS_BUILD_DURATION = Histogram(
    "qkv_basis_build_duration_seconds",
    "Duration of exact basis and operator construction",
    ["kind"],  # kind: primitive/bivector/mu
    buckets=[0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0],
)


# =============================================================================
# TIMING DECORATOR
# =============================================================================
def timed(
    metric: Histogram,
    labels: Optional[dict] = None,
):
    """Decorator to time function execution and record to Prometheus histogram."""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                duration = time.perf_counter() - start
                if labels:
                    metric.labels(**labels).observe(duration)
                else:
                    metric.observe(duration)
        return wrapper
    return decorator


# =============================================================================
# INITIALIZATION
# =============================================================================
# Library default; the CLI reconfigures from flags.
configure_logging(json_format=Config.json_logs(), log_level=Config.QKV_LOG_LEVEL)

log = get_logger("qkv")
