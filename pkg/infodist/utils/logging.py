"""
Centralized logging for infodist.

Every message goes to the standard ``logging`` module and to an in-memory
ring buffer, so the CLI can tally the warnings and errors a run produced
without scraping stderr. Buffer entries carry timestamps; reports never do.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from threading import Lock
from typing import Any, Deque, Dict, List, Mapping, Optional, Tuple


class LogLevel(str, Enum):
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"

    @property
    def stdlib_level(self) -> int:
        return getattr(logging, self.name)


def format_metadata(metadata: Mapping[str, Any]) -> str:
    """Render keyword context as ``key=value`` pairs in key order."""
    parts = []
    for key in sorted(metadata):
        value = metadata[key]
        if isinstance(value, float):
            value = f"{value:.6g}"
        parts.append(f"{key}={value}")
    return " ".join(parts)


@dataclass(frozen=True)
class LogEntry:
    level: LogLevel
    message: str
    source: str = "infodist"
    metadata: Dict[str, Any] = field(default_factory=dict)
    timestamp: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    @property
    def is_problem(self) -> bool:
        return self.level in (LogLevel.WARNING, LogLevel.ERROR, LogLevel.CRITICAL)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "timestamp": self.timestamp.isoformat(),
            "level": self.level.value,
            "message": self.message,
            "source": self.source,
            "metadata": dict(self.metadata),
        }


class LogBuffer:
    """
    Thread-safe ring buffer of recent entries.

    Campaign trials may log from a thread pool. The warning and error
    counters keep counting after old entries fall off the ring.
    """

    def __init__(self, max_size: int = 1000):
        self._entries: Deque[LogEntry] = deque(maxlen=max_size)
        self._lock = Lock()
        self._levels: Counter = Counter()

    def add(self, entry: LogEntry) -> None:
        with self._lock:
            self._entries.append(entry)
            self._levels[entry.level] += 1

    def tally(self) -> Tuple[int, int]:
        """(warnings, errors) since the last clear; critical counts as error."""
        with self._lock:
            errors = self._levels[LogLevel.ERROR] + self._levels[LogLevel.CRITICAL]
            return self._levels[LogLevel.WARNING], errors

    def get_recent(
        self,
        limit: int = 100,
        level: Optional[LogLevel] = None,
        source: Optional[str] = None,
    ) -> List[Dict[str, Any]]:
        """Most recent entries first, optionally filtered by level and source."""
        with self._lock:
            entries = list(self._entries)
        selected = [
            e for e in reversed(entries)
            if (level is None or e.level == level) and (source is None or e.source == source)
        ]
        return [e.to_dict() for e in selected[:limit]]

    def problems(self, source: Optional[str] = None) -> List[LogEntry]:
        """Buffered warnings and errors in arrival order."""
        with self._lock:
            return [e for e in self._entries if e.is_problem and (source is None or e.source == source)]

    def get_stats(self) -> Dict[str, Any]:
        warnings, errors = self.tally()
        with self._lock:
            by_source = Counter(e.source for e in self._entries)
            return {
                "total": len(self._entries),
                "by_source": dict(by_source),
                "error_count": errors,
                "warning_count": warnings,
            }

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self._levels.clear()


_log_buffer = LogBuffer()


def get_log_buffer() -> LogBuffer:
    return _log_buffer


class AppLogger:
    """
    Logger for one subsystem, writing to stdlib logging and the buffer.

    Context goes in keyword arguments:
    ``logger.info("Campaign finished", campaign="monotonicity", n_pass=100)``.
    """

    def __init__(self, source: str):
        self.source = source
        self._logger = logging.getLogger(f"infodist.{source}")

    def _log(self, level: LogLevel, message: str, metadata: Dict[str, Any]) -> None:
        _log_buffer.add(LogEntry(level, message, self.source, metadata))
        if self._logger.isEnabledFor(level.stdlib_level):
            suffix = f" | {format_metadata(metadata)}" if metadata else ""
            self._logger.log(level.stdlib_level, f"{message}{suffix}")

    def debug(self, message: str, **metadata: Any) -> None:
        self._log(LogLevel.DEBUG, message, metadata)

    def info(self, message: str, **metadata: Any) -> None:
        self._log(LogLevel.INFO, message, metadata)

    def warning(self, message: str, **metadata: Any) -> None:
        self._log(LogLevel.WARNING, message, metadata)

    def error(self, message: str, **metadata: Any) -> None:
        self._log(LogLevel.ERROR, message, metadata)

    def critical(self, message: str, **metadata: Any) -> None:
        self._log(LogLevel.CRITICAL, message, metadata)


def get_logger(source: str) -> AppLogger:
    return AppLogger(source)


# One logger per subsystem
linalg_logger = get_logger("linalg")
model_logger = get_logger("models")
measurement_logger = get_logger("measurement")
fisher_logger = get_logger("fisher")
divergence_logger = get_logger("divergence")
certify_logger = get_logger("certify")
cli_logger = get_logger("cli")
