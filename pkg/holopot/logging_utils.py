"""Structured logging for the library and the CLI."""

from __future__ import annotations

import logging
import sys
from typing import Optional, TextIO, Union

import structlog

_HANDLER_NAME = "holopot-stderr"


def _resolve_level(level: Union[int, str]) -> int:
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(level.upper())
    return resolved if isinstance(resolved, int) else logging.INFO


def _find_handler(root: logging.Logger) -> Optional[logging.StreamHandler]:
    for handler in root.handlers:
        if handler.get_name() == _HANDLER_NAME:
            return handler  # type: ignore[return-value]
    return None


def setup_logging(
    level: Union[int, str] = logging.INFO,
    timestamper: Optional[str] = "iso",
    stream: Optional[TextIO] = None,
) -> None:
    """Configure structlog to render one JSON object per event on standard error.

    structlog is configured once; later calls only update the level and point the
    handler at the current ``stream`` (default ``sys.stderr``), so repeated CLI
    invocations in one process keep standard output free for their JSON document.
    """
    root = logging.getLogger()
    root.setLevel(_resolve_level(level))
    target = stream if stream is not None else sys.stderr

    handler = _find_handler(root)
    if handler is not None:
        handler.acquire()
        try:
            handler.stream = target
        finally:
            handler.release()
        return

    handler = logging.StreamHandler(target)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root.addHandler(handler)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.processors.TimeStamper(fmt="iso" if timestamper == "iso" else None, utc=True),
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer(),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
