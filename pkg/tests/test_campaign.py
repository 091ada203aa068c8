import csv
import json
import math

import pytest
import yaml

from qineq_audit.campaign import (
    CSV_COLUMNS,
    AuditKind,
    AuditRecord,
    AuditReport,
    build_campaign_config,
    emit_report,
    load_report,
    record_from_verdict,
    report_to_json,
    run_audit,
    summarise,
)
from qineq_audit.campaign import cli
from qineq_audit.config import LOCAL_RESULTS_DIR
from qineq_audit.corpus import get_function
from qineq_audit.errors import UsageError
from qineq_audit.inequalities import ostrowski_final_form


@pytest.fixture
def small_overrides(tmp_path):
    return {
        "q_grid": [0.5],
        "x_grid_size": 3,
        "r_values": [1.0, 2.0],
        "corpus_filter": ["affine", "square"],
        "max_workers": 2,
        "output": str(tmp_path / "audit.csv"),
    }


@pytest.fixture
def campaign_file(tmp_path):
    path = tmp_path / "campaign.yaml"
    path.write_text(
        yaml.safe_dump(
            {
                "q_grid": [0.5],
                "x_grid_size": 3,
                "r_values": [1.0],
                "corpus_filter": ["affine"],
            }
        )
    )
    return path


@pytest.fixture(autouse=True)
def no_log_files(monkeypatch):
    monkeypatch.setattr(cli, "setup_logging", lambda: None)


def test_default_config():
    config = build_campaign_config()
    assert set(config.audit_kinds) == set(AuditKind)
    assert config.q_grid == (0.1, 0.3, 0.5, 0.7, 0.9)
    assert config.x_grid_size == 9
    assert config.output == LOCAL_RESULTS_DIR / "audit.csv"
    assert "output" in config.as_dict()


def test_file_values_override_defaults_and_flags_override_file(campaign_file):
    config = build_campaign_config(campaign_file, {"q_grid": [0.3], "seed": None})
    assert config.q_grid == (0.3,)
    assert config.corpus_filter == ("affine",)
    assert config.seed == build_campaign_config().seed


@pytest.mark.parametrize(
    "overrides",
    [
        {"q_grid": []},
        {"q_grid": [1.5]},
        {"r_values": [0.5]},
        {"x_grid_size": 1},
        {"corpus_filter": ["sine"]},
        {"format": "xml"},
        {"pairings": ["sideways"]},
        {"max_workers": 0},
    ],
)
def test_invalid_values_are_usage_errors(overrides):
    with pytest.raises(UsageError):
        build_campaign_config(overrides=overrides)


def test_unknown_campaign_keys_are_rejected(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("q_grid: [0.5]\ncolour: blue\n")
    with pytest.raises(UsageError):
        build_campaign_config(path)
    with pytest.raises(UsageError):
        build_campaign_config(overrides={"colour": "blue"})


def test_regression_audit_detects_known_counterexamples():
    config = build_campaign_config(overrides={"audit_kinds": ["regression"]})
    report = run_audit(config)
    assert [r.audit_kind for r in report.records] == [
        "regression.ostrowski_final",
        "regression.power_mean_as_stated",
        "regression.power_mean_swapped",
    ]
    assert all(r.asserted and r.passed for r in report.records)
    as_stated = report.records[1]
    assert not as_stated.holds
    assert as_stated.lhs == pytest.approx(9.0 / 28.0, abs=1e-12)
    assert as_stated.rhs == pytest.approx(1.0 / 14.0, abs=1e-12)


def test_identity_only_campaign(small_overrides):
    config = build_campaign_config(
        overrides={**small_overrides, "audit_kinds": ["identity"]}
    )
    report = run_audit(config)
    assert set(report.summary) == {"identity"}
    assert not report.asserted_failures
    formal = [r for r in report.records if r.audit_kind == "identity.formal_split"]
    assert len(formal) == 2 * 3
    assert all(r.holds for r in formal)


@pytest.mark.integration
def test_full_small_campaign(small_overrides):
    report = run_audit(build_campaign_config(overrides=small_overrides))
    assert set(report.summary) == {k.value for k in AuditKind}
    assert not report.asserted_failures, [
        (r.audit_kind, r.function, r.x, r.r) for r in report.asserted_failures
    ]
    power_mean = [r for r in report.records if r.audit_kind == "inequalities.power_mean"]
    assert any(not r.holds for r in power_mean)
    assert report.summary == summarise(report.records)
    totals = sum(row["total"] for row in report.summary.values())
    assert totals == len(report.records)


def test_metadata_has_no_timestamp_by_default(small_overrides):
    config = build_campaign_config(
        overrides={**small_overrides, "audit_kinds": ["regression"]}
    )
    metadata = run_audit(config).metadata
    assert metadata["timestamp"] is None
    assert metadata["tool"] == "qineq-audit"
    assert "output" not in metadata["config"]


def _one_record_report():
    verdict = ostrowski_final_form(get_function("square"), 0.5, 0.5, M=1.5)
    record = record_from_verdict("inequalities.ostrowski_final", verdict)
    return AuditReport(metadata={"tool": "qineq-audit"}, records=[record])


def test_empty_report_is_header_only(tmp_path):
    path = emit_report(AuditReport(metadata={}, records=[]), "csv", tmp_path / "e.csv")
    assert path.read_text() == ",".join(CSV_COLUMNS) + "\n"


def test_one_record_gives_one_row_of_thirteen_columns(tmp_path):
    path = emit_report(_one_record_report(), "csv", tmp_path / "one.csv")
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == list(CSV_COLUMNS)
    assert len(rows) == 2
    assert len(rows[1]) == 13
    assert float(rows[1][CSV_COLUMNS.index("rhs")]) == 0.25
    assert rows[1][CSV_COLUMNS.index("r")] == ""


def test_json_round_trip_is_bit_exact(tmp_path):
    report = _one_record_report()
    path = emit_report(report, "json", tmp_path / "one.json")
    loaded = load_report(path)
    assert loaded.records[0].lhs == report.records[0].lhs
    assert loaded.records[0].csv_row() == report.records[0].csv_row()
    assert report_to_json(loaded) == path.read_text()
    assert json.loads(path.read_text())["records"][0]["holds"] is False


def test_unknown_format_is_rejected(tmp_path):
    with pytest.raises(ValueError):
        emit_report(_one_record_report(), "xml", tmp_path / "x.xml")


def test_records_sort_with_missing_numbers_last():
    records = [
        AuditRecord(audit_kind="limits.derivative", function="exp", q=None),
        AuditRecord(audit_kind="limits.derivative", function="exp", q=0.5),
    ]
    assert sorted(records, key=AuditRecord.sort_key)[0].q == 0.5


def test_campaign_output_is_deterministic(small_overrides, tmp_path):
    overrides = {**small_overrides, "audit_kinds": ["identity", "moments", "regression"]}
    config = build_campaign_config(overrides=overrides)
    for fmt in ("csv", "json"):
        first = emit_report(run_audit(config), fmt, tmp_path / f"first.{fmt}")
        second = emit_report(run_audit(config), fmt, tmp_path / f"second.{fmt}")
        assert first.read_bytes() == second.read_bytes()


def test_cli_regression_exit_codes(tmp_path):
    out = tmp_path / "reports" / "regression.json"
    assert cli.main(["regression", "--format", "json", "--out", str(out)]) == 0
    assert len(load_report(out).records) == 3
    # the as-stated counterexamples violate their bounds
    assert cli.main(["regression", "--out", str(out), "--strict"]) == 1


def test_cli_usage_errors(campaign_file, tmp_path):
    out = str(tmp_path / "x.csv")
    assert cli.main(["identity", "--q", "1.5", "--out", out]) == 2
    assert cli.main(["identity", "--q", "", "--out", out]) == 2
    assert cli.main(["bogus"]) == 2
    assert cli.main(["audit", "--config", str(tmp_path / "missing.yaml")]) == 2
    assert cli.main(["identity", "--config", str(campaign_file), "--r", "0.5"]) == 2


def test_cli_io_failure(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("")
    assert cli.main(["regression", "--out", str(blocker / "r.csv")]) == 3


def test_cli_subcommand_restricts_kinds(campaign_file, tmp_path):
    out = tmp_path / "identity.json"
    code = cli.main(
        [
            "identity",
            "--config",
            str(campaign_file),
            "--format",
            "json",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert set(load_report(out).summary) == {"identity"}


def test_cli_accepts_comma_separated_lists(campaign_file, tmp_path):
    out = tmp_path / "q.json"
    argv = ["identity", "--config", str(campaign_file), "--q", "0.3,0.7"]
    assert cli.main([*argv, "--format", "json", "--out", str(out)]) == 0
    qs = {r.q for r in load_report(out).records}
    assert qs == {0.3, 0.7}


def _reject_constant(token):
    raise ValueError(f"non-standard JSON constant {token}")


def test_json_report_with_nan_fields_is_strict_json(tmp_path):
    record = AuditRecord(
        audit_kind="inequalities.power_mean",
        function="square",
        q=0.5,
        lhs=0.1,
        reason_code="malformed_bound",
        detail={"diagnostics": {"upper_bracket": math.nan, "tail": math.inf}},
    )
    report = AuditReport(metadata={}, records=[record])
    path = emit_report(report, "json", tmp_path / "nan.json")
    text = path.read_text()
    tree = json.loads(text, parse_constant=_reject_constant)
    row = tree["records"][0]
    assert row["rhs"] is None and row["margin"] is None
    assert row["detail"]["diagnostics"] == {"upper_bracket": None, "tail": None}

    loaded = load_report(path).records[0]
    assert math.isnan(loaded.rhs) and math.isnan(loaded.margin)
    assert loaded.lhs == 0.1
    assert loaded.malformed
    assert report_to_json(load_report(path)) == text


def test_csv_and_json_write_floats_alike(tmp_path):
    record = AuditRecord(
        audit_kind="moments.K1",
        function="",
        q=0.1,
        lhs=1.0 / 3.0,
        rhs=math.inf,
        margin=math.nan,
    )
    report = AuditReport(metadata={}, records=[record])
    csv_text = emit_report(report, "csv", tmp_path / "f.csv").read_text()
    json_text = emit_report(report, "json", tmp_path / "f.json").read_text()
    row = csv_text.splitlines()[1].split(",")
    assert row[CSV_COLUMNS.index("q")] == "0.1"
    assert row[CSV_COLUMNS.index("lhs")] == repr(1.0 / 3.0)
    assert row[CSV_COLUMNS.index("rhs")] == ""
    assert row[CSV_COLUMNS.index("margin")] == ""
    assert '"q": 0.1,' in json_text
    assert f'"lhs": {1.0 / 3.0!r},' in json_text


@pytest.mark.slow
@pytest.mark.integration
def test_default_audit_campaign_exits_cleanly(tmp_path):
    assert cli.main(["audit", "--out", str(tmp_path / "audit.csv")]) == 0
