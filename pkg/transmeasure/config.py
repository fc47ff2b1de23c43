"""Run configuration: precision settings, command-line flags and config files."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence
import argparse
import os

from transmeasure.errors import ConfigError, InvalidInputError
from transmeasure.io_helpers import parse_fraction, read_key_value_file

MAX_PRECISION_ENV_VAR = "TRANSMEASURE_MAX_PRECISION"

DEFAULT_WORKING_BITS = 64
DEFAULT_MAX_BITS = 4096
DEFAULT_TARGET_WIDTH = Fraction(1, 10**30)
DEFAULT_SEARCH_CAP = 10**8
DEFAULT_MATRIX_CAP = 2000

TARGETS = ("pi", "log2", "e")
PRESETS = ("thm2", "thm3", "thm4", "thm5")


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision (bits) for interval arithmetic and its hard cap."""

    working_bits: int = DEFAULT_WORKING_BITS
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self) -> None:
        if self.working_bits < 2:
            raise ConfigError("working precision must be at least 2 bits")
        if self.max_bits < self.working_bits:
            raise ConfigError(
                f"max precision ({self.max_bits} bits) is below working precision "
                f"({self.working_bits} bits)"
            )


def default_workers() -> int:
    return os.cpu_count() or 1


@dataclass
class RunConfig:
    """Resolved settings for one CLI invocation."""

    command: str
    precision: Fraction = DEFAULT_TARGET_WIDTH
    numerics: PrecisionConfig = field(default_factory=PrecisionConfig)
    workers: int = field(default_factory=default_workers)
    cap: int = DEFAULT_SEARCH_CAP
    matrix_cap: int = DEFAULT_MATRIX_CAP
    preset: str | None = None
    out: Path | None = None
    log_file: Path | None = None
    quiet: bool = False
    options: dict[str, Any] = field(default_factory=dict)


# Flags shared by every subcommand; each maps to a config-file key of the same name.
_COMMON_KEYS = (
    "precision",
    "working-precision",
    "max-precision",
    "workers",
    "cap",
    "matrix-cap",
    "preset",
    "out",
    "log-file",
    "quiet",
)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("common options")
    group.add_argument(
        "--precision",
        default=None,
        help="target interval width, e.g. 1e-30 (default 1e-30)",
    )
    group.add_argument(
        "--working-precision",
        type=int,
        default=None,
        help=f"initial working precision in bits (default {DEFAULT_WORKING_BITS})",
    )
    group.add_argument(
        "--max-precision",
        type=int,
        default=None,
        help=(
            "maximum working precision in bits "
            f"(default ${MAX_PRECISION_ENV_VAR} or {DEFAULT_MAX_BITS})"
        ),
    )
    group.add_argument("--workers", type=int, default=None, help="worker processes")
    group.add_argument("--cap", type=int, default=None, help="search space cap")
    group.add_argument(
        "--matrix-cap", type=int, default=None, help="interpolation matrix size cap"
    )
    group.add_argument(
        "--preset", choices=PRESETS, default=None, help="named theorem substitution"
    )
    group.add_argument("--out", default=None, help="write the JSON report here")
    group.add_argument("--config", default=None, help="key = value config file")
    group.add_argument("--log-file", default=None, help="mirror terminal output here")
    group.add_argument(
        "--quiet", action="store_true", default=None, help="suppress status lines"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="transmeasure",
        description="Certified evaluation and verification of explicit transcendence measures.",
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    height = commands.add_parser(
        "height", parents=[common], help="Weil height, length and the height-length inequality"
    )
    height.add_argument("--minpoly", required=True, help="coefficients, leading first")
    height.add_argument("--root-index", type=int, default=0)

    measure = commands.add_parser(
        "measure-bound", parents=[common], help="explicit measures for pi, log 2, e"
    )
    measure.add_argument("--target", choices=TARGETS, required=True)
    measure.add_argument(
        "--form", choices=("algebraic-approx", "polynomial"), default="polynomial"
    )
    measure.add_argument("--degree", "-d", type=int, required=True)
    measure.add_argument("--length", "-L", required=True)

    theorem1 = commands.add_parser(
        "theorem1", parents=[common], help="main lower bound for |e^theta - alpha| + |theta - beta|"
    )
    _add_param_arguments(theorem1)

    theorem5 = commands.add_parser(
        "theorem5", parents=[common], help="bounds for |e^beta - alpha| and |beta - log alpha|"
    )
    theorem5.add_argument(
        "--kind", choices=("exp-minus-alpha", "beta-minus-log"), default="exp-minus-alpha"
    )
    theorem5.add_argument("--D", dest="D", type=int, required=True)
    theorem5.add_argument("--log-a", required=True)
    theorem5.add_argument("--h-beta", required=True)
    theorem5.add_argument("--E", dest="E", default="E")
    theorem5.add_argument("--h-alpha", default=None)
    theorem5.add_argument("--abs-beta", default=None)

    theorem6 = commands.add_parser(
        "theorem6", parents=[common], help="explicit measures for log(alpha) and e^beta"
    )
    theorem6.add_argument("--kind", choices=("log-alpha", "exp-beta"), required=True)
    theorem6.add_argument("--minpoly", required=True)
    theorem6.add_argument("--root-index", type=int, default=0)
    theorem6.add_argument("--degree", "-d", type=int, required=True)
    theorem6.add_argument("--length", "-L", type=int, required=True)

    lemma4 = commands.add_parser(
        "lemma4-verify", parents=[common], help="binomial polynomial integrality and bounds"
    )
    lemma4.add_argument("--N", dest="N", type=int, default=3)
    lemma4.add_argument("--H", dest="H", type=int, default=2)
    lemma4.add_argument("--x", dest="x", type=int, default=1)
    lemma4.add_argument("--sigma", type=int, default=2)
    lemma4.add_argument("--sweep", action="store_true")
    lemma4.add_argument("--N-max", dest="N_max", type=int, default=20)
    lemma4.add_argument("--H-max", dest="H_max", type=int, default=10)
    lemma4.add_argument("--sigma-max", type=int, default=10)
    lemma4.add_argument("--x-max", type=int, default=30)

    zero_estimate = commands.add_parser(
        "zero-estimate", parents=[common], help="exact multiplicity estimate verifier"
    )
    zero_estimate.add_argument("--instance", default=None, help="JSON instance file")
    zero_estimate.add_argument("--sweep", action="store_true")
    zero_estimate.add_argument("--bound", type=int, default=5)
    zero_estimate.add_argument("--trials", type=int, default=50)
    zero_estimate.add_argument("--seed", type=int, default=0)

    interp = commands.add_parser(
        "interp-demo", parents=[common], help="toy interpolation determinant"
    )
    interp.add_argument("--toy", default=None, help="JSON toy configuration file")
    interp.add_argument("--S", dest="S", type=int, default=2)
    interp.add_argument("--S1", dest="S1", type=int, default=2)
    interp.add_argument("--T", dest="T", type=int, default=1)
    interp.add_argument("--T1", dest="T1", type=int, default=1)
    interp.add_argument("--H", dest="H", type=int, default=2)
    interp.add_argument("--alpha", default="2")
    interp.add_argument("--beta", default="1")
    interp.add_argument("--theta", default="1")
    interp.add_argument("--samples", type=int, default=20)
    interp.add_argument("--seed", type=int, default=0)

    lemma3 = commands.add_parser(
        "lemma3-bound", parents=[common], help="analytic determinant upper bound"
    )
    lemma3.add_argument("--L", dest="L", type=int, required=True)
    lemma3.add_argument("--E", dest="E", default="E")
    lemma3.add_argument("--M", dest="M", default="0")
    lemma3.add_argument("--S", dest="S", default="0")
    lemma3.add_argument("--epsilon", default=None)

    vanishing = commands.add_parser(
        "vanishing-order", parents=[common], help="order of vanishing of D_{I,J}(z)"
    )
    vanishing.add_argument("--exponents", required=True)
    vanishing.add_argument("--orders", required=True)
    vanishing.add_argument("--points", required=True)

    chain = commands.add_parser(
        "chain-verify", parents=[common], help="instance checks of the constant chains"
    )
    chain.add_argument("--section", choices=("1", "6"), default="1")
    chain.add_argument("--degree", "-d", type=int, default=1)
    chain.add_argument("--length", "-L", default="10")
    chain.add_argument("--xi", default=None, help="minimal polynomial of the approximant")
    chain.add_argument("--xi-root-index", type=int, default=0)
    _add_param_arguments(chain, include_instance=False)

    search = commands.add_parser(
        "search", parents=[common], help="exhaustive search for small |P(target)|"
    )
    search.add_argument("--target", choices=TARGETS, action="append", default=None)
    search.add_argument("--degree", "-d", type=int, required=True)
    search.add_argument("--length", "-L", type=int, required=True)
    search.add_argument("--mode", choices=("poly", "alg", "both"), default="both")
    search.add_argument("--sweep", action="store_true")
    search.add_argument("--run-log", default=None)

    liouville = commands.add_parser(
        "liouville", parents=[common], help="Liouville inequality at an algebraic point"
    )
    liouville.add_argument("--poly", required=True, help="expression in x0, x1, ...")
    liouville.add_argument("--point", action="append", required=True, help="minimal polynomial")
    liouville.add_argument("--root-index", type=int, action="append", default=None)
    liouville.add_argument("--field-degree", type=int, required=True)
    liouville.add_argument("--complex-field", action="store_true")

    commands.add_parser("constants", parents=[common], help="export the constants table")

    return parser


def _add_param_arguments(
    parser: argparse.ArgumentParser, *, include_instance: bool = True
) -> None:
    parser.add_argument("--D", dest="D", type=int, required=False)
    parser.add_argument("--log-a", default=None)
    parser.add_argument("--log-b", default=None)
    parser.add_argument("--E", dest="E", default=None)
    parser.add_argument("--theta", default=None)
    if include_instance:
        parser.add_argument("--degree", "-d", type=int, default=None)
        parser.add_argument("--length", "-L", default="10")


def _resolve(
    key: str, cli_value: Any, file_values: dict[str, str], fallback: Any
) -> Any:
    if cli_value is not None:
        return cli_value
    if key in file_values:
        return file_values[key]
    return fallback


def _as_positive_int(key: str, value: Any) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from exc
    if number < 1:
        raise ConfigError(f"{key} must be positive, got {number}")
    return number


def _as_bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in {"1", "true", "yes", "on"}:
        return True
    if text in {"0", "false", "no", "off"}:
        return False
    raise ConfigError(f"{key} must be a boolean, got {value!r}")


def _env_max_bits() -> int | None:
    raw = os.environ.get(MAX_PRECISION_ENV_VAR)
    if raw is None or not raw.strip():
        return None
    return _as_positive_int(MAX_PRECISION_ENV_VAR, raw)


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    """Parse CLI arguments into a `RunConfig`.

    Flags win over the config file, which wins over the environment, which
    wins over built-in defaults.

    Raises:
        SystemExit: argparse usage errors (exit code 2).
        ConfigError: values that parse but are invalid.
    """
    parser = build_parser()
    namespace = parser.parse_args(argv)
    values = vars(namespace).copy()

    file_values: dict[str, str] = {}
    if config_path := values.pop("config", None):
        file_values = read_key_value_file(config_path)
        unknown = sorted(set(file_values) - set(_COMMON_KEYS))
        if unknown:
            raise ConfigError(f"Unknown config key(s): {', '.join(unknown)}")

    env_max_bits = _env_max_bits()

    precision_raw = _resolve("precision", values.pop("precision"), file_values, None)
    try:
        precision = (
            parse_fraction(precision_raw)
            if precision_raw is not None
            else DEFAULT_TARGET_WIDTH
        )
    except InvalidInputError as exc:
        raise ConfigError(str(exc)) from exc
    if precision <= 0:
        raise ConfigError(f"precision must be positive, got {precision_raw!r}")

    working_bits = _as_positive_int(
        "working-precision",
        _resolve(
            "working-precision",
            values.pop("working_precision"),
            file_values,
            DEFAULT_WORKING_BITS,
        ),
    )
    max_bits = _as_positive_int(
        "max-precision",
        _resolve(
            "max-precision",
            values.pop("max_precision"),
            file_values,
            env_max_bits if env_max_bits is not None else DEFAULT_MAX_BITS,
        ),
    )
    numerics = PrecisionConfig(
        working_bits=min(working_bits, max_bits), max_bits=max_bits
    )

    workers = _as_positive_int(
        "workers", _resolve("workers", values.pop("workers"), file_values, default_workers())
    )
    cap = _as_positive_int(
        "cap", _resolve("cap", values.pop("cap"), file_values, DEFAULT_SEARCH_CAP)
    )
    matrix_cap = _as_positive_int(
        "matrix-cap",
        _resolve("matrix-cap", values.pop("matrix_cap"), file_values, DEFAULT_MATRIX_CAP),
    )

    preset = _resolve("preset", values.pop("preset"), file_values, None)
    if preset is not None and preset not in PRESETS:
        raise ConfigError(f"Unknown preset {preset!r}; expected one of {PRESETS}")

    out = _resolve("out", values.pop("out"), file_values, None)
    log_file = _resolve("log-file", values.pop("log_file"), file_values, None)
    quiet = _as_bool("quiet", _resolve("quiet", values.pop("quiet"), file_values, False))

    command = values.pop("command")
    return RunConfig(
        command=command,
        precision=precision,
        numerics=numerics,
        workers=workers,
        cap=cap,
        matrix_cap=matrix_cap,
        preset=preset,
        out=Path(out) if out else None,
        log_file=Path(log_file) if log_file else None,
        quiet=quiet,
        options=values,
    )


__all__ = [
    "DEFAULT_MATRIX_CAP",
    "DEFAULT_MAX_BITS",
    "DEFAULT_SEARCH_CAP",
    "DEFAULT_TARGET_WIDTH",
    "DEFAULT_WORKING_BITS",
    "MAX_PRECISION_ENV_VAR",
    "PRESETS",
    "PrecisionConfig",
    "RunConfig",
    "TARGETS",
    "build_parser",
    "default_workers",
    "parse_config",
]
