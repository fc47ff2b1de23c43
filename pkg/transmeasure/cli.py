"""Command-line entry point.

Every subcommand runs one module operation inside a precision tracker and
emits a `RunReport`. The exit code follows the verdict: 0 when every check
passes, 1 on a failed check or a counterexample, 2 on usage errors and 3
when a comparison stayed undecided at the precision cap.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from contextlib import nullcontext, redirect_stdout
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any
import sys

import sympy

from transmeasure.binomial import DeltaParams, lemma4_check, lemma4_sweep, lemma4_sweep_results
from transmeasure.bounds import (
    chain_check_section6,
    chain_check_theorem_derivations,
    constants_table,
    measure_bound,
    measure_expression,
    measure_form_check,
    measure_phi,
    theorem1_expression,
    theorem1_log_bound,
    theorem5_expression,
    theorem5_log_bound,
    theorem6_log_bound,
)
from transmeasure.config import TARGETS, RunConfig, parse_config
from transmeasure.errors import (
    EXIT_CHECK_FAILED,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    ConfigError,
    TransmeasureError,
    exit_code_for,
)
from transmeasure.heights import (
    AlgebraicNumber,
    LiouvilleContext,
    check_height_length,
    height,
    liouville_check,
    log_mahler_measure,
)
from transmeasure.interdet import (
    BoundParams,
    InterpolationShape,
    derive_params,
    determinant_decay_check,
    entry_consistency_sweep,
    entry_integrality_sweep,
    lemma3_expression,
    lemma3_rhs,
    toy_rank_check,
    vanishing_order_check,
)
from transmeasure.io_helpers import parse_fraction, parse_fraction_list, parse_int_list
from transmeasure.logging import (
    build_structured_report_entry,
    configure_terminal_output_mirror,
    disable_terminal_output_mirror,
    log_check_rows,
    log_error,
    log_header,
    log_report,
)
from transmeasure.numerics import CheckRow
from transmeasure.presets import random_parameter_packs, substitution
from transmeasure.schemas import (
    IntPolynomial,
    Lemma3Config,
    MeasureQuery,
    RunReport,
    SearchSpace,
    ToyInterpolationConfig,
    VanishingOrderCase,
    ZeroEstimateInstance,
    build_model,
    load_model,
)
from transmeasure.search import (
    enumerate_min_alg_approx,
    enumerate_min_poly_value,
    monotonicity_violations,
    search_results,
    sweep,
    verify_against_bound,
)
from transmeasure.usage import track_precision
from transmeasure.zeroest import lemma2_check, lemma2_sweep


@dataclass
class CommandOutcome:
    """What a command hands back to `dispatch` for reporting."""

    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckRow] = field(default_factory=list)
    verdict: str | None = None


Handler = Callable[[RunConfig], CommandOutcome]


def _flag_row(label: str, passed: bool, *, detail: str | None = None) -> CheckRow:
    return CheckRow(label, None, None, passed, detail=detail)


def _require(config: RunConfig, *names: str) -> list[Any]:
    missing = [name for name in names if config.options.get(name) is None]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise ConfigError(f"{config.command} needs {flags} (or --preset)")
    return [config.options[name] for name in names]


def _explicit_params(config: RunConfig) -> dict[str, Any]:
    D, log_a, log_b, E, theta = _require(config, "D", "log_a", "log_b", "E", "theta")
    return {"D": D, "logA": log_a, "logB": log_b, "E": E, "theta": theta}


def _params_of(params: BoundParams) -> dict[str, Any]:
    return {
        name: getattr(params, name)
        for name in ("U", "V", "W", "S", "S1", "T", "T1", "H", "L")
    }


# Commands


def run_height(config: RunConfig) -> CommandOutcome:
    poly = IntPolynomial.parse(config.options["minpoly"])
    number = AlgebraicNumber.from_minpoly(poly, config.options["root_index"], config.numerics)
    value = height(number, config.precision, config.numerics)
    check = check_height_length(poly, config.precision, config.numerics)
    row = CheckRow(
        "h(alpha) <= log L(alpha) / d",
        check.height,
        check.bound,
        check.verdict == "pass",
        inconclusive=check.verdict == "inconclusive",
    )
    return CommandOutcome(
        inputs={"minpoly": poly.to_text(), "root_index": number.root_index},
        results={
            "degree": number.degree,
            "length": number.length,
            "is_real": number.is_real,
            "height": value,
            "log_mahler_measure": log_mahler_measure(poly, config.precision, config.numerics),
            "root": number.which_root.root,
        },
        checks=[row],
    )


def run_measure_bound(config: RunConfig) -> CommandOutcome:
    options = config.options
    query = build_model(
        MeasureQuery,
        target=options["target"],
        form=options["form"],
        d=options["degree"],
        L=parse_fraction(options["length"]),
    )
    results: dict[str, Any] = {
        "log_bound": measure_bound(query, config.precision, config.numerics),
        "expression": str(measure_expression(query)),
    }
    if query.form == "algebraic-approx":
        results["phi"] = measure_phi(
            query.target, query.d, query.L, config.precision, config.numerics
        )
    return CommandOutcome(
        inputs=query.model_dump(mode="json"),
        results=results,
        checks=[measure_form_check(query.target, query.d, query.L, config.numerics)],
    )


def run_theorem1(config: RunConfig) -> CommandOutcome:
    options = config.options
    if config.preset is not None:
        sub = substitution(config.preset, options.get("degree") or 1, options["length"])
        inputs, raw = sub.describe(), sub.params()
    else:
        raw = _explicit_params(config)
        inputs = {key: str(value) for key, value in raw.items()}
    params = derive_params(**raw, precision=config.precision, config=config.numerics)
    return CommandOutcome(
        inputs=inputs,
        results={
            "log_bound": theorem1_log_bound(params, config.precision, config.numerics),
            "expression": str(theorem1_expression(**raw)),
            "parameters": _params_of(params),
        },
        checks=list(params.checks),
    )


def run_theorem5(config: RunConfig) -> CommandOutcome:
    options = config.options
    bound = theorem5_log_bound(
        options["kind"],
        options["D"],
        options["log_a"],
        options["h_beta"],
        options["E"],
        h_alpha=options["h_alpha"],
        abs_beta=options["abs_beta"],
        precision=config.precision,
        config=config.numerics,
    )
    return CommandOutcome(
        inputs={key: options[key] for key in ("kind", "D", "log_a", "h_beta", "E")},
        results={
            "log_bound": bound,
            "expression": str(
                theorem5_expression(options["D"], options["log_a"], options["h_beta"], options["E"])
            ),
        },
    )


def run_theorem6(config: RunConfig) -> CommandOutcome:
    options = config.options
    number = AlgebraicNumber.from_minpoly(
        options["minpoly"], options["root_index"], config.numerics
    )
    report = theorem6_log_bound(
        options["kind"],
        number,
        options["degree"],
        options["length"],
        config.precision,
        config.numerics,
    )
    return CommandOutcome(
        inputs={
            "kind": report.kind,
            "minpoly": number.minpoly.to_text(),
            "N": report.N,
            "M": report.M,
        },
        results={
            "log_bound": report.log_bound,
            "height_upper": report.height_upper,
            "modulus_upper": report.modulus_upper,
            "expression": report.expression,
        },
    )


def run_lemma4(config: RunConfig) -> CommandOutcome:
    options = config.options
    if options["sweep"]:
        summary = lemma4_sweep(
            options["N_max"],
            options["H_max"],
            options["sigma_max"],
            options["x_max"],
            config.numerics,
        )
        results = lemma4_sweep_results(summary)
        if summary.first_failure is not None:
            results["first_failure"] = summary.first_failure
        return CommandOutcome(
            inputs=summary.grid,
            results=results,
            checks=[
                _flag_row("integrality of d_sigma * Delta^(u)", not summary.integrality_failures),
                _flag_row("sigma log nu(H) < (107/103) sigma H", not summary.bound_42_failures),
                _flag_row("derivative size bound", not summary.bound_43_failures),
            ],
        )
    params = DeltaParams.from_degree(options["N"], options["H"])
    report = lemma4_check(options["x"], params, options["sigma"], config.numerics)
    return CommandOutcome(
        inputs={"x": report.x, "N": report.N, "H": report.H, "sigma": report.sigma},
        results={
            "witnesses": [str(value) for value in report.witnesses],
            "log_d_sigma": report.log_d_sigma,
            "derivative_sum": report.lhs_43,
            "derivative_bound": report.rhs_43,
        },
        checks=[
            _flag_row("integrality of d_sigma * Delta^(u)", report.integrality),
            _flag_row("sigma log nu(H) < (107/103) sigma H", report.bound_42),
            _flag_row("derivative size bound", report.bound_43),
        ],
    )


def run_zero_estimate(config: RunConfig) -> CommandOutcome:
    options = config.options
    if options["instance"]:
        instance = load_model(ZeroEstimateInstance, options["instance"])
        report = lemma2_check(instance)
        return CommandOutcome(
            inputs=instance.model_dump(mode="json"),
            results={
                "condition_21": report.condition_21,
                "rank": report.rank,
                "kernel_dim": report.kernel_dim,
                "verdict": report.verdict,
                "kernel_witness": report.kernel_witness,
            },
            checks=[_flag_row("no nonzero polynomial under S*M > (D0+M)(D1+1)", report.passed)],
        )
    if not options["sweep"]:
        raise ConfigError("zero-estimate needs --instance or --sweep")
    summary = lemma2_sweep(options["bound"], options["trials"], options["seed"])
    return CommandOutcome(
        inputs={"bound": options["bound"], "trials": options["trials"], "seed": options["seed"]},
        results={
            "instances": summary.instances,
            "counterexamples": summary.counterexamples,
            "violating_instances": summary.violating_instances,
            "kernel_witnesses": summary.kernel_witnesses,
            "first_counterexample": summary.first_counterexample,
            "witness_examples": summary.witness_examples,
        },
        checks=[
            _flag_row("trivial kernel under S*M > (D0+M)(D1+1)", not summary.counterexamples),
            _flag_row(
                "kernel element below the counting bound",
                summary.kernel_witnesses == summary.violating_instances,
            ),
        ],
    )


def run_interp_demo(config: RunConfig) -> CommandOutcome:
    options = config.options
    if options["toy"]:
        toy = load_model(ToyInterpolationConfig, options["toy"])
    else:
        toy = build_model(
            ToyInterpolationConfig,
            **{key: options[key] for key in ("S", "S1", "T", "T1", "H", "theta")},
            alpha=parse_fraction(options["alpha"]),
            beta=parse_fraction(options["beta"]),
        )
    shape = InterpolationShape.from_toy(toy)
    rank = toy_rank_check(toy, config.matrix_cap)
    integrality = entry_integrality_sweep(shape)
    consistency = entry_consistency_sweep(
        shape, options["samples"], options["seed"], config=config.numerics
    )
    decay = determinant_decay_check(shape, config=config.numerics)
    return CommandOutcome(
        inputs=toy.model_dump(mode="json"),
        results={
            "L": rank.L,
            "rows": rank.rows,
            "rank": rank.rank,
            "verdict": rank.verdict,
            "shape_regime": rank.shape_regime,
            "selected_rows": rank.selected_rows,
            "minor_determinant": rank.minor_determinant,
            "kernel": rank.kernel,
            "entries_checked": integrality.checked,
            "consistency_checked": consistency.checked,
            "decay": decay,
        },
        checks=[
            _flag_row(f"exact rank of the {rank.rows}x{rank.L} matrix", rank.passed,
                      detail=rank.verdict),
            _flag_row("integrality of every entry polynomial", integrality.passed),
            _flag_row("entry polynomials inside the analytic entries", consistency.passed),
            _flag_row("log|det| / L <= analytic bound", decay.passed, detail=decay.method),
        ],
    )


def run_lemma3(config: RunConfig) -> CommandOutcome:
    options = config.options
    cfg = build_model(
        Lemma3Config,
        L=options["L"],
        E=options["E"],
        M=options["M"],
        S=options["S"],
        epsilon=parse_fraction(options["epsilon"]) if options["epsilon"] else None,
    )
    return CommandOutcome(
        inputs=cfg.model_dump(mode="json"),
        results={
            "log_bound_per_L": lemma3_rhs(cfg, config.precision, config.numerics),
            "expression": str(lemma3_expression(cfg)),
        },
    )


def run_vanishing_order(config: RunConfig) -> CommandOutcome:
    options = config.options
    case = build_model(
        VanishingOrderCase,
        exponents=tuple(parse_int_list(options["exponents"])),
        orders=tuple(parse_int_list(options["orders"])),
        points=tuple(parse_fraction_list(options["points"])),
    )
    report = vanishing_order_check(case)
    return CommandOutcome(
        inputs=case.model_dump(mode="json"),
        results={
            "computed_order": report.computed_order,
            "lower_bound": report.lower_bound,
            "identically_zero": report.identically_zero,
            "determinant": report.determinant,
        },
        checks=[_flag_row("order at 0 >= |I|(|I|-1)/2 - sum J", report.passed)],
    )


def _approximant_height(config: RunConfig) -> Fraction | None:
    xi = config.options.get("xi")
    if xi is None:
        return None
    number = AlgebraicNumber.from_minpoly(xi, config.options["xi_root_index"], config.numerics)
    return height(number, Fraction(1, 10**12), config.numerics).hi


def run_chain_verify(config: RunConfig) -> CommandOutcome:
    options = config.options
    degree, length = options["degree"], options["length"]
    if options["section"] == "1":
        if config.preset is None:
            raise ConfigError("chain-verify --section 1 needs --preset")
        h_xi = _approximant_height(config)
        report = chain_check_theorem_derivations(
            config.preset, degree, length, h_xi=h_xi, config=config.numerics
        )
        return CommandOutcome(
            inputs={"section": "1", **report.instance},
            results={"chain": report.name, "verdict": report.verdict},
            checks=list(report.rows),
        )

    if config.preset is not None:
        packs = [substitution(config.preset, degree, length).params()]
    elif options.get("D") is not None:
        packs = [_explicit_params(config)]
    else:
        packs = [pack.params() for pack in random_parameter_packs(10)]
    rows: list[CheckRow] = []
    instances = []
    verdicts = []
    for index, raw in enumerate(packs):
        params = derive_params(**raw, precision=config.precision, config=config.numerics)
        report = chain_check_section6(params, config.numerics)
        prefix = f"[pack {index}] " if len(packs) > 1 else ""
        rows.extend(
            replace(row, label=prefix + row.label)
            for row in (*params.checks, *report.rows)
        )
        instances.append(report.instance)
        verdicts.append(report.verdict)
    return CommandOutcome(
        inputs={"section": "6", "packs": instances},
        results={"packs": len(packs), "verdicts": verdicts},
        checks=rows,
    )


def run_search(config: RunConfig) -> CommandOutcome:
    options = config.options
    targets = options["target"] or list(TARGETS)
    modes = ("poly", "alg") if options["mode"] == "both" else (options["mode"],)
    d_max, L_max = options["degree"], options["length"]
    inputs = {"targets": targets, "modes": list(modes), "d_max": d_max, "L_max": L_max}

    if options["sweep"]:
        summary = sweep(
            targets,
            d_max,
            L_max,
            options["run_log"],
            modes=modes,
            workers=config.workers,
            cap=config.cap,
            config=config.numerics,
        )
        violations = monotonicity_violations(summary.records)
        return CommandOutcome(
            inputs=inputs,
            results={
                "computed": summary.computed,
                "skipped": summary.skipped,
                "records": summary.records,
            },
            checks=[
                _flag_row("every cell meets its theorem bound", not summary.failures),
                _flag_row("minimum nonincreasing in d and L", not violations),
            ],
            verdict="inconclusive" if summary.inconclusive and summary.passed else None,
        )

    cells = []
    checks = []
    for target in targets:
        for mode in modes:
            space = SearchSpace(target=target, d_max=d_max, L_max=L_max)
            search = enumerate_min_poly_value if mode == "poly" else enumerate_min_alg_approx
            result = search(space, workers=config.workers, cap=config.cap, config=config.numerics)
            verification = None
            if L_max >= 3:
                form = "polynomial" if mode == "poly" else "algebraic-approx"
                query = MeasureQuery(target=target, form=form, d=d_max, L=Fraction(L_max))
                verification = verify_against_bound(result, query, config=config.numerics)
                checks.append(
                    CheckRow(
                        f"log {'|P(' + target + ')|' if mode == 'poly' else '|' + target + ' - xi|'}"
                        " >= theorem bound",
                        verification.bound,
                        verification.log_best,
                        verification.passed,
                        inconclusive=verification.inconclusive,
                    )
                )
            cells.append(search_results(result, verification))
    return CommandOutcome(inputs=inputs, results={"cells": cells}, checks=checks)


def run_liouville(config: RunConfig) -> CommandOutcome:
    options = config.options
    minpolys = options["point"]
    indices = options["root_index"] or [0] * len(minpolys)
    if len(indices) != len(minpolys):
        raise ConfigError("give one --root-index per --point")
    points = [
        AlgebraicNumber.from_minpoly(minpoly, index, config.numerics)
        for minpoly, index in zip(minpolys, indices)
    ]
    try:
        expr = sympy.sympify(options["poly"])
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ConfigError(f"cannot parse polynomial {options['poly']!r}") from exc
    ctx = LiouvilleContext(options["field_degree"], not options["complex_field"])
    report = liouville_check(expr, points, ctx, config.numerics)
    return CommandOutcome(
        inputs={
            "poly": str(expr),
            "points": [p.minpoly.to_text() for p in points],
            "field_degree": ctx.field_degree,
            "real_field": ctx.is_real_field,
        },
        results={
            "degrees": report.degrees,
            "length": report.poly_length,
            "bound": report.bound,
            "log_value": report.log_value,
        },
        checks=[
            CheckRow("log|f(alpha)| >= Liouville bound", report.bound, report.log_value, report.passed)
        ],
    )


def run_constants(config: RunConfig) -> CommandOutcome:
    return CommandOutcome(results={"constants": constants_table()})


COMMANDS: dict[str, Handler] = {
    "height": run_height,
    "measure-bound": run_measure_bound,
    "theorem1": run_theorem1,
    "theorem5": run_theorem5,
    "theorem6": run_theorem6,
    "lemma4-verify": run_lemma4,
    "zero-estimate": run_zero_estimate,
    "interp-demo": run_interp_demo,
    "lemma3-bound": run_lemma3,
    "vanishing-order": run_vanishing_order,
    "chain-verify": run_chain_verify,
    "search": run_search,
    "liouville": run_liouville,
    "constants": run_constants,
}

_VERDICT_EXIT = {"pass": EXIT_OK, "fail": EXIT_CHECK_FAILED, "inconclusive": EXIT_INCONCLUSIVE}


def _emit(config: RunConfig, report: RunReport, checks: Sequence[CheckRow]) -> None:
    # Status lines go to stderr while the JSON document owns stdout.
    status = redirect_stdout(sys.stderr) if config.out is None else nullcontext()
    if not config.quiet:
        with status:
            log_header(f"transmeasure {report.command}")
            log_check_rows(checks)
            log_report(report)
    if config.out is not None:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(report.to_json() + "\n", encoding="utf-8")
    else:
        print(report.to_json())


def dispatch(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except TransmeasureError as exc:
        log_error(str(exc))
        return exit_code_for(exc)

    if config.log_file is not None:
        configure_terminal_output_mirror(str(config.log_file))
    try:
        with track_precision() as tracker:
            try:
                outcome = COMMANDS[config.command](config)
            except TransmeasureError as exc:
                code = exit_code_for(exc)
                if code != EXIT_USAGE:
                    verdict = "inconclusive" if code == EXIT_INCONCLUSIVE else "fail"
                    report = build_structured_report_entry(
                        config.command, {}, {"error": str(exc)}, (), tracker, verdict=verdict
                    )
                    _emit(config, report, ())
                log_error(str(exc))
                return code
        report = build_structured_report_entry(
            config.command,
            outcome.inputs,
            outcome.results,
            outcome.checks,
            tracker,
            verdict=outcome.verdict,
        )
        _emit(config, report, outcome.checks)
        return _VERDICT_EXIT[report.verdict]
    finally:
        if config.log_file is not None:
            disable_terminal_output_mirror()


def main(argv: Sequence[str] | None = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


__all__ = [
    "COMMANDS",
    "CommandOutcome",
    "dispatch",
    "main",
]
