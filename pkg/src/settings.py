from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class SettingsError(Exception):
    pass


@dataclass(frozen=True)
class Settings:
    log_level: str = "WARNING"
    threads: int = 1
    verify_bound: int = 14


def _default_config_path() -> Path:
    return Path.home() / ".config" / "jacobi_cells" / "config"


def _read_config_file(path: Path) -> Dict[str, str]:
    if not path.exists():
        return {}
    entries: Dict[str, str] = {}
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def _lookup(key: str, file_entries: Dict[str, str]) -> Optional[str]:
    env_value = os.getenv(key)
    if env_value and env_value.strip():
        return env_value.strip()
    return file_entries.get(key) or None


def _positive_int(key: str, value: Optional[str], default: int) -> int:
    if value is None:
        return default
    try:
        parsed = int(value)
    except ValueError as exc:
        raise SettingsError(f"{key} must be an integer, got {value!r}") from exc
    if parsed < 1:
        raise SettingsError(f"{key} must be at least 1, got {parsed}")
    return parsed


def read_settings() -> Settings:
    path = Path(os.getenv("JACOBI_CELLS_CONFIG") or _default_config_path())
    file_entries = _read_config_file(path)

    level = (_lookup("JACOBI_CELLS_LOG_LEVEL", file_entries) or "WARNING").upper()
    if level not in LOG_LEVELS:
        raise SettingsError(f"JACOBI_CELLS_LOG_LEVEL must be one of {LOG_LEVELS}")

    return Settings(
        log_level=level,
        threads=_positive_int(
            "JACOBI_CELLS_THREADS", _lookup("JACOBI_CELLS_THREADS", file_entries), 1
        ),
        verify_bound=_positive_int(
            "JACOBI_CELLS_VERIFY_BOUND",
            _lookup("JACOBI_CELLS_VERIFY_BOUND", file_entries),
            14,
        ),
    )
