from __future__ import annotations

import logging
from typing import Optional

try:
    from rich.console import Console
    from rich.logging import RichHandler
except Exception:
    Console = None  # type: ignore
    RichHandler = None  # type: ignore

from src.settings import SettingsError, read_settings

_configured = False


def _configure_logging() -> None:
    global _configured
    if _configured:
        return

    try:
        level = read_settings().log_level
    except SettingsError:
        # reported by the command layer; logging still needs a level
        level = "WARNING"
    handlers = []
    if RichHandler is not None:
        # stdout carries command output, so logs go to stderr
        handlers = [
            RichHandler(
                console=Console(stderr=True), rich_tracebacks=True, show_path=False
            )
        ]

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=handlers or None,
    )
    _configured = True


def get_logger(name: Optional[str] = None) -> logging.Logger:
    _configure_logging()
    return logging.getLogger(name or "jacobi_cells")
