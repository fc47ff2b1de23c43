from transmeasure.usage import (
    PrecisionTracker,
    current_tracker,
    summarize_precision,
    track_precision,
)


def test_summarize_precision_collects_tracker_counts() -> None:
    tracker = PrecisionTracker()
    tracker.record_evaluation(64, label="height")
    tracker.record_evaluation(64, label="height")
    tracker.record_escalation(64, 128)
    tracker.record_evaluation(128, label="bound")
    tracker.record_inconclusive()
    tracker.finish()

    summary = summarize_precision(tracker)

    assert summary["evaluations"] == 3
    assert summary["escalations"] == 1
    assert summary["inconclusive"] == 1
    assert summary["max_bits_used"] == 128
    assert summary["details"] == {"bound": 1, "height": 2}
    assert list(summary["details"]) == ["bound", "height"]
    assert summary["elapsed_seconds"] >= 0
    assert tracker.precision_summary() == summary


def test_track_precision_installs_and_resets_the_tracker() -> None:
    assert current_tracker() is None

    with track_precision() as tracker:
        assert current_tracker() is tracker
        tracker.record_evaluation(64)

    assert current_tracker() is None
    assert tracker.finished_at is not None
    assert tracker.details == {}


def test_finish_is_idempotent() -> None:
    tracker = PrecisionTracker()
    tracker.finish()
    first = tracker.finished_at
    tracker.finish()

    assert tracker.finished_at == first
    assert tracker.elapsed_seconds >= 0
