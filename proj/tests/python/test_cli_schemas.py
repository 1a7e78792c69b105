import json

import jsonschema


def validate(doc, schema):
    jsonschema.Draft202012Validator(schema).validate(doc)


def test_ingest_report(cli, schema, fixture_csv):
    validate(json.loads(cli("ingest", "--input", fixture_csv).stdout), schema("cleaning_report"))


def test_events(cli, schema, fixture_csv):
    validate(json.loads(cli("events", "--input", fixture_csv).stdout), schema("events"))


def test_fit_and_bundle(cli, schema, fixture_csv, tmp_path):
    cli("stats", "--input", fixture_csv, "--out-dir", tmp_path)
    single = json.loads(cli("fit", "--stats", tmp_path / "do_stats.csv", "--target", "mean").stdout)
    validate(single, schema("fit"))
    validate(json.loads(cli("fit", "--stats-dir", tmp_path).stdout), schema("bundle"))
    validate(json.loads(cli("fit", "--reference").stdout), schema("bundle"))


def test_predict(cli, schema):
    for n in ("1", "10", "250"):
        validate(json.loads(cli("predict", "--reference", "--n", n).stdout), schema("prediction"))
    bad = cli("predict", "--reference", "--n", "300", check=False)
    assert bad.returncode == 1
    assert "validated range" in bad.stderr


def test_simulate(cli, schema):
    doc = json.loads(cli("simulate", "--n", "20", "--replicates", "500", "--mode", "physical").stdout)
    validate(doc, schema("simulation"))


def test_report_is_deterministic(cli, schema, fixture_csv, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli("report", "--input", fixture_csv, "--out", a, "--seed", "3", "--replicates", "200")
    cli("report", "--input", fixture_csv, "--out", b, "--seed", "3", "--replicates", "200")
    assert a.read_bytes() == b.read_bytes()
    validate(json.loads(a.read_text()), schema("report"))


def test_usage_error_exit_code(cli):
    assert cli("predict", "--n", "5", "--bundle", "x", "--reference", check=False).returncode == 2
