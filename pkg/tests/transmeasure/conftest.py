import json

import pytest

from transmeasure.cli import dispatch
from transmeasure.config import PrecisionConfig


class CliRunner:
    """Run the CLI in-process and decode the JSON report from stdout."""

    def __init__(self, capsys):
        self._capsys = capsys

    def run(self, *argv: str) -> tuple[int, dict | None]:
        code = dispatch(list(argv))
        out = self._capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None


@pytest.fixture
def fast_config() -> PrecisionConfig:
    return PrecisionConfig(working_bits=64, max_bits=1024)


@pytest.fixture
def cli(capsys) -> CliRunner:
    return CliRunner(capsys)
