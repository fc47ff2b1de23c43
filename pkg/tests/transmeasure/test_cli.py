import json


def test_height_reports_the_weil_height(cli) -> None:
    code, report = cli.run("height", "--minpoly", "1,0,-2", "--quiet")

    assert code == 0
    assert report["command"] == "height"
    assert report["verdict"] == "pass"
    assert report["results"]["degree"] == 2
    assert report["results"]["height"]["lo"].startswith("0.34657")
    assert report["checks"][0]["pass"] is True
    assert report["precision"]["evaluations"] > 0


def test_height_is_inconclusive_at_a_low_cap(cli) -> None:
    code, report = cli.run(
        "height",
        "--minpoly",
        "1,0,-2",
        "--working-precision",
        "64",
        "--max-precision",
        "64",
        "--quiet",
    )

    assert code == 3
    assert report["verdict"] == "inconclusive"
    assert "error" in report["results"]


def test_unknown_command_is_a_usage_error(cli) -> None:
    code, report = cli.run("nosuchcmd")

    assert code == 2
    assert report is None


def test_lemma4_verify_defaults(cli) -> None:
    code, report = cli.run("lemma4-verify", "--quiet")

    assert code == 0
    assert report["results"]["witnesses"] == ["4", "10", "16"]
    assert report["inputs"] == {"x": 1, "N": 3, "H": 2, "sigma": 2}


def test_zero_estimate_needs_an_instance_or_a_sweep(cli) -> None:
    code, report = cli.run("zero-estimate", "--quiet")

    assert code == 2
    assert report is None


def test_zero_estimate_reads_an_instance_file(cli, tmp_path) -> None:
    instance = tmp_path / "instance.json"
    instance.write_text(
        json.dumps(
            {
                "D0": 1,
                "D1": 1,
                "S": 2,
                "M": 1,
                "beta": "1",
                "points": [["0", "1"]],
            }
        ),
        encoding="utf-8",
    )

    code, report = cli.run("zero-estimate", "--instance", str(instance), "--quiet")

    assert code == 0
    assert report["results"]["rank"] == 2
    assert report["results"]["kernel_dim"] == 2
    assert report["results"]["verdict"] == "consistent-with-lemma"


def test_chain_verify_section6_with_a_preset(cli) -> None:
    code, report = cli.run("chain-verify", "--section", "6", "--preset", "thm2", "--quiet")

    assert code == 0
    assert report["results"]["verdicts"] == ["pass"]


def test_chain_verify_section1_requires_a_preset(cli) -> None:
    code, _ = cli.run("chain-verify", "--quiet")

    assert code == 2


def test_chain_verify_reports_a_failing_substitution(cli) -> None:
    code, report = cli.run("chain-verify", "--preset", "thm2", "-L", "3", "--quiet")

    assert code == 1
    assert report["verdict"] == "fail"


def test_search_single_cell(cli) -> None:
    code, report = cli.run(
        "search",
        "--target",
        "pi",
        "-d",
        "1",
        "-L",
        "10",
        "--mode",
        "poly",
        "--workers",
        "1",
        "--quiet",
    )

    assert code == 0
    assert report["results"]["cells"][0]["best_poly"] == "1,-3"
    assert report["checks"][0]["label"] == "log |P(pi)| >= theorem bound"


def test_measure_bound(cli) -> None:
    code, report = cli.run(
        "measure-bound", "--target", "e", "--form", "algebraic-approx", "-d", "1", "-L", "3", "--quiet"
    )

    assert code == 0
    assert report["inputs"]["form"] == "algebraic-approx"
    assert report["results"]["log_bound"]["hi"].startswith("-")
    assert "phi" in report["results"]


def test_theorem5_rejects_a_small_e(cli) -> None:
    code, report = cli.run(
        "theorem5", "--D", "1", "--log-a", "1", "--h-beta", "0", "--E", "2", "--quiet"
    )

    assert code == 2
    assert report is None


def test_vanishing_order(cli) -> None:
    code, report = cli.run(
        "vanishing-order",
        "--exponents",
        "0,1,2",
        "--orders",
        "0,0,0",
        "--points",
        "1,2,3",
        "--quiet",
    )

    assert code == 0
    assert report["results"]["computed_order"] == 3


def test_interp_demo_with_defaults(cli) -> None:
    code, report = cli.run("interp-demo", "--samples", "5", "--quiet")

    assert code == 0
    assert report["results"]["rank"] == 6
    assert report["results"]["consistency_checked"] == 5
    assert report["results"]["decay"]["method"] == "expansion"


def test_constants_written_to_a_file(cli, tmp_path) -> None:
    out = tmp_path / "reports" / "constants.json"

    code, report = cli.run("constants", "--out", str(out), "--quiet")

    assert code == 0
    assert report is None
    written = json.loads(out.read_text(encoding="utf-8"))
    names = {row["name"] for row in written["results"]["constants"]}
    assert {"main", "thm5", "final.total"} <= names


def test_log_file_mirrors_terminal_output(cli, tmp_path) -> None:
    log_file = tmp_path / "run.log"

    code, report = cli.run("constants", "--log-file", str(log_file))

    assert code == 0
    assert report["command"] == "constants"
    text = log_file.read_text(encoding="utf-8")
    assert '"command": "constants"' in text
    assert "\x1b[" not in text
