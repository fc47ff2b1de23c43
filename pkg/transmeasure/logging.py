"""Terminal output and structured report utilities.

This module provides functions for:
- mirroring terminal output to a log file
- printing colored check rows and verdicts
- transforming command results into structured JSON report entries
- appending to and reading the JSON-lines run log of resumable sweeps
"""

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional
import atexit
import json
import os
import re
import sys
import threading

from transmeasure._utils import bcolors
from transmeasure.errors import InvalidInputError
from transmeasure.numerics import CertifiedComplex, CertifiedReal, CheckRow
from transmeasure.schemas import CheckModel, IntervalModel, RunReport, interval_json
from transmeasure.usage import PrecisionTracker, summarize_precision


_ANSI_ESCAPE_RE = re.compile(r"\x1B\[[0-?]*[ -/]*[@-~]")


class _TerminalMirrorStream:
    """Mirror a terminal stream to a file handle."""

    def __init__(
        self,
        terminal_stream,
        log_file,
        *,
        strip_ansi: bool,
        write_lock: threading.Lock,
    ):
        self._terminal_stream = terminal_stream
        self._log_file = log_file
        self._strip_ansi = strip_ansi
        self._write_lock = write_lock

    def write(self, data: str) -> int:
        if not isinstance(data, str):
            data = str(data)

        written = self._terminal_stream.write(data)

        if data:
            log_data = _ANSI_ESCAPE_RE.sub("", data) if self._strip_ansi else data
            with self._write_lock:
                self._log_file.write(log_data)
                self._log_file.flush()

        return written

    def flush(self) -> None:
        self._terminal_stream.flush()
        with self._write_lock:
            self._log_file.flush()

    def isatty(self) -> bool:
        return self._terminal_stream.isatty()

    def __getattr__(self, name):
        return getattr(self._terminal_stream, name)


class _TerminalMirrorState:
    """Runtime state for active stdout/stderr mirroring."""

    def __init__(self, *, log_file_path: str, log_file, original_stdout, original_stderr):
        self.log_file_path = log_file_path
        self.log_file = log_file
        self.original_stdout = original_stdout
        self.original_stderr = original_stderr


_terminal_mirror_state: Optional[_TerminalMirrorState] = None
_terminal_mirror_state_lock = threading.RLock()


def configure_terminal_output_mirror(log_file_path: str, *, strip_ansi: bool = True) -> None:
    """Mirror terminal stdout/stderr output into a log file.

    Mirroring an already mirrored path is a no-op; a different path replaces
    the previous mirror.
    """
    global _terminal_mirror_state

    if not log_file_path:
        return

    normalized_path = os.path.abspath(log_file_path)

    with _terminal_mirror_state_lock:
        if _terminal_mirror_state and _terminal_mirror_state.log_file_path == normalized_path:
            return

        if _terminal_mirror_state:
            disable_terminal_output_mirror()

        log_file = open(normalized_path, "a", encoding="utf-8")
        write_lock = threading.Lock()
        original_stdout, original_stderr = sys.stdout, sys.stderr

        sys.stdout = _TerminalMirrorStream(
            original_stdout, log_file, strip_ansi=strip_ansi, write_lock=write_lock
        )
        sys.stderr = _TerminalMirrorStream(
            original_stderr, log_file, strip_ansi=strip_ansi, write_lock=write_lock
        )

        _terminal_mirror_state = _TerminalMirrorState(
            log_file_path=normalized_path,
            log_file=log_file,
            original_stdout=original_stdout,
            original_stderr=original_stderr,
        )


def disable_terminal_output_mirror() -> None:
    """Disable active terminal output mirroring and restore streams."""
    global _terminal_mirror_state

    with _terminal_mirror_state_lock:
        if not _terminal_mirror_state:
            return

        state = _terminal_mirror_state
        _terminal_mirror_state = None

        sys.stdout = state.original_stdout
        sys.stderr = state.original_stderr

        try:
            state.log_file.flush()
        finally:
            state.log_file.close()


atexit.register(disable_terminal_output_mirror)


def _to_jsonable(value: Any) -> Any:
    """Convert arbitrary values into JSON-compatible structures.

    Certified intervals use the report interval format; fractions become
    ``"p/q"`` strings so no precision is lost.
    """
    if value is None or isinstance(value, (str, int, float, bool)):
        return value

    if isinstance(value, Fraction):
        return str(value)

    if isinstance(value, (CertifiedReal, CertifiedComplex)):
        return interval_json(value)

    if isinstance(value, Mapping):
        return {str(key): _to_jsonable(item) for key, item in value.items()}

    if isinstance(value, (list, tuple, set, frozenset)):
        return [_to_jsonable(item) for item in value]

    if is_dataclass(value) and not isinstance(value, type):
        # shallow, so nested certified values keep their interval format
        return {f.name: _to_jsonable(getattr(value, f.name)) for f in fields(value)}

    model_dump = getattr(value, "model_dump", None)
    if callable(model_dump):
        try:
            return _to_jsonable(model_dump(mode="json"))
        except TypeError:
            return _to_jsonable(model_dump())

    if hasattr(value, "__dict__"):
        public_attrs = {
            key: _to_jsonable(item)
            for key, item in vars(value).items()
            if not key.startswith("_")
        }
        if public_attrs:
            return public_attrs

    return str(value)


def _serialize_value_to_string(value: Any) -> str:
    """Return a stable string representation for structured log fields."""
    if isinstance(value, str):
        return value
    return json.dumps(_to_jsonable(value), ensure_ascii=False, sort_keys=True)


def check_model(row: CheckRow) -> CheckModel:
    """Report form of one decided (or undecided) check row."""
    detail = row.detail
    if row.inconclusive and not detail:
        detail = "inconclusive at the precision cap"
    return CheckModel(
        label=row.label,
        lhs=IntervalModel.from_certified(row.lhs) if row.lhs is not None else None,
        rhs=IntervalModel.from_certified(row.rhs) if row.rhs is not None else None,
        passed=row.passed,
        strict=row.strict,
        advisory=row.advisory,
        detail=detail,
    )


def verdict_of(rows: Sequence[CheckRow]) -> str:
    """``pass`` unless a non-advisory row failed; undecided rows make it inconclusive."""
    decisive = [row for row in rows if not row.advisory]
    if all(row.passed for row in decisive):
        return "pass"
    if any(row.inconclusive for row in decisive):
        return "inconclusive"
    return "fail"


def build_structured_report_entry(
    command: str,
    inputs: Mapping[str, Any],
    results: Mapping[str, Any],
    checks: Sequence[CheckRow] = (),
    tracker: PrecisionTracker | None = None,
    *,
    verdict: str | None = None,
) -> RunReport:
    """Build the structured report of a single command run."""
    findings = [row.label for row in checks if row.advisory and not row.passed]
    timing: dict[str, Any] = {}
    precision: dict[str, Any] = {}
    if tracker is not None:
        summary = summarize_precision(tracker)
        timing = {"elapsed_seconds": summary.pop("elapsed_seconds")}
        precision = summary
    return RunReport(
        command=command,
        inputs=_to_jsonable(dict(inputs)),
        results=_to_jsonable(dict(results)),
        checks=[check_model(row) for row in checks],
        findings=findings,
        verdict=verdict or verdict_of(checks),
        timing=timing,
        precision=precision,
    )


def append_run_log_entry(path: str | Path, entry: Mapping[str, Any]) -> None:
    """Append one JSON line to the run log, creating parent directories."""
    log_path = Path(path)
    log_path.parent.mkdir(parents=True, exist_ok=True)
    with log_path.open("a", encoding="utf-8") as handle:
        handle.write(_serialize_value_to_string(dict(entry)) + "\n")


def read_run_log(path: str | Path) -> list[dict[str, Any]]:
    """Read every record of a run log; a missing log is empty.

    A truncated final line (interrupted write) is ignored.
    """
    log_path = Path(path)
    if not log_path.exists():
        return []
    lines = log_path.read_text(encoding="utf-8").splitlines()
    records: list[dict[str, Any]] = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            if number == len(lines):
                break
            raise InvalidInputError(f"{log_path}:{number}: malformed run log line") from exc
    return records


_VERDICT_COLORS = {
    "pass": bcolors.PASS,
    "fail": bcolors.CHECK_FAIL,
    "inconclusive": bcolors.INCONCLUSIVE,
}


def log_header(message: str) -> None:
    print(f"{bcolors.SYSTEM}{message}{bcolors.ENDC}")


def log_check_rows(rows: Iterable[CheckRow], *, verbose: bool = False) -> None:
    """Print one colored line per check row; advisory rows are marked as such."""
    for row in rows:
        if row.inconclusive:
            color, status = bcolors.INCONCLUSIVE, "UNDECIDED"
        elif row.passed:
            color, status = bcolors.PASS, "ok"
        elif row.advisory:
            color, status = bcolors.ADVISORY, "finding"
        else:
            color, status = bcolors.CHECK_FAIL, "FAIL"
        line = f"  [{status}] {row.label}"
        if verbose and row.lhs is not None and row.rhs is not None:
            line += f"  ({float(row.lhs):.6g} vs {float(row.rhs):.6g})"
        print(f"{color}{line}{bcolors.ENDC}")


def log_report(report: RunReport) -> None:
    """Print a report's headline and verdict."""
    color = _VERDICT_COLORS.get(report.verdict, bcolors.SYSTEM)
    print(
        f"{bcolors.SYSTEM}{report.command}{bcolors.ENDC}: "
        f"{len(report.checks)} checks, {len(report.findings)} findings -> "
        f"{color}{report.verdict.upper()}{bcolors.ENDC}"
    )
    if report.precision:
        print(
            f"{bcolors.INTERVAL}precision: max {report.precision.get('max_bits_used', 0)} bits, "
            f"{report.precision.get('escalations', 0)} escalations{bcolors.ENDC}"
        )


def log_error(message: str) -> None:
    print(f"{bcolors.FAIL}error: {message}{bcolors.ENDC}", file=sys.stderr)


__all__ = [
    "append_run_log_entry",
    "build_structured_report_entry",
    "check_model",
    "configure_terminal_output_mirror",
    "disable_terminal_output_mirror",
    "log_check_rows",
    "log_error",
    "log_header",
    "log_report",
    "read_run_log",
    "verdict_of",
]
