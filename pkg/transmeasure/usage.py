"""Precision and timing tracking for certified computations."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Any
import time


_active_tracker: ContextVar[PrecisionTracker | None] = ContextVar(
    "transmeasure_precision_tracker", default=None
)


def _as_int(value: Any) -> int:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return int(value)
    return 0


@dataclass
class PrecisionTracker:
    """Aggregate working-precision usage across certified evaluations."""

    evaluations: int = 0
    escalations: int = 0
    inconclusive: int = 0
    max_bits_used: int = 0
    started_at: float = field(default_factory=time.perf_counter)
    finished_at: float | None = None
    details: dict[str, int] = field(default_factory=dict)

    def record_evaluation(self, bits: int, *, label: str | None = None) -> None:
        self.evaluations += 1
        self.max_bits_used = max(self.max_bits_used, _as_int(bits))
        if label:
            self.details[label] = self.details.get(label, 0) + 1

    def record_escalation(self, from_bits: int, to_bits: int) -> None:
        self.escalations += 1
        self.max_bits_used = max(self.max_bits_used, _as_int(to_bits), _as_int(from_bits))

    def record_inconclusive(self) -> None:
        self.inconclusive += 1

    def finish(self) -> None:
        if self.finished_at is None:
            self.finished_at = time.perf_counter()

    @property
    def elapsed_seconds(self) -> float:
        end = self.finished_at if self.finished_at is not None else time.perf_counter()
        return end - self.started_at

    def precision_summary(self) -> dict[str, Any]:
        return summarize_precision(self)


def summarize_precision(tracker: PrecisionTracker) -> dict[str, Any]:
    """Return the stable precision/timing summary shape used in reports."""
    return {
        "evaluations": tracker.evaluations,
        "escalations": tracker.escalations,
        "inconclusive": tracker.inconclusive,
        "max_bits_used": tracker.max_bits_used,
        "elapsed_seconds": round(tracker.elapsed_seconds, 6),
        "details": dict(sorted(tracker.details.items())),
    }


def current_tracker() -> PrecisionTracker | None:
    """Return the tracker installed by `track_precision`, if any."""
    return _active_tracker.get()


@contextmanager
def track_precision(
    tracker: PrecisionTracker | None = None,
) -> Iterator[PrecisionTracker]:
    """Install a tracker for every escalation run inside the block."""
    tracker = tracker or PrecisionTracker()
    token = _active_tracker.set(tracker)
    try:
        yield tracker
    finally:
        tracker.finish()
        _active_tracker.reset(token)


__all__ = [
    "PrecisionTracker",
    "current_tracker",
    "summarize_precision",
    "track_precision",
]
