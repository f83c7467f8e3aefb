import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from holopot.logging_utils import setup_logging
from main import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, cli

SAMPLE_DATA = Path(__file__).resolve().parent.parent / "sample_data"


@pytest.fixture
def runner():
    yield CliRunner()
    setup_logging("WARNING")


def _run(runner, *args, env=None):
    return runner.invoke(cli, list(args), env=env)


def test_check_exact_verdicts(runner):
    result = _run(runner, "check-exact", "--expr", "z2; z1")
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["verdict"] == "exact"

    result = _run(runner, "check-exact", "--expr", "z2; -z1")
    assert result.exit_code == EXIT_NEGATIVE
    report = json.loads(result.stdout)
    assert report["verdict"] == "not_exact"
    assert report["worst_pair"] == [1, 2]
    assert report["witness"]["value"] == pytest.approx(2.0)


def test_check_exact_from_file(runner):
    result = _run(runner, "check-exact", "--file", str(SAMPLE_DATA / "rotation_field.json"))
    assert result.exit_code == EXIT_NEGATIVE
    result = _run(runner, "check-exact", "--file", str(SAMPLE_DATA / "swap_field.json"))
    assert result.exit_code == EXIT_OK


def test_check_exact_numeric(runner):
    result = _run(runner, "check-exact", "--expr", "z2; z1", "--numeric", "--samples", "8")
    assert result.exit_code == EXIT_OK
    report = json.loads(result.stdout)
    assert report["verdict"] == "exact_at_tolerance"
    assert report["numeric"] is True

    result = _run(runner, "check-exact", "--expr", "z2; -z1", "--numeric", "--samples", "8")
    assert result.exit_code == EXIT_NEGATIVE


def test_parse_errors_exit_with_position(runner):
    result = _run(runner, "check-exact", "--expr", "z1 + * z2; z1")
    assert result.exit_code == EXIT_ERROR
    assert "line 1, column 6" in result.stderr

    result = _run(runner, "check-exact", "--expr", "conj(z1); z2")
    assert result.exit_code == EXIT_ERROR
    assert "non-holomorphic" in result.stderr

    result = _run(runner, "check-exact", "--expr", "z3; z1")
    assert result.exit_code == EXIT_ERROR


def test_usage_errors(runner):
    result = _run(runner, "check-exact")
    assert result.exit_code == EXIT_ERROR
    both = _run(runner, "check-exact", "--expr", "z1", "--file", str(SAMPLE_DATA / "swap_field.json"))
    assert both.exit_code == EXIT_ERROR
    missing = _run(runner, "check-exact", "--file", str(SAMPLE_DATA / "missing.json"))
    assert missing.exit_code == EXIT_ERROR


def test_invalid_document_file(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dimension": 2, "components": "nope"}', encoding="utf-8")
    result = _run(runner, "check-exact", "--file", str(path))
    assert result.exit_code == EXIT_ERROR
    assert "PolyFieldModel" in result.stderr


def test_reconstruct(runner, tmp_path):
    out = tmp_path / "potential.json"
    result = _run(runner, "reconstruct", "--expr", "z2; z1", "--out", str(out))
    assert result.exit_code == EXIT_OK
    document = json.loads(result.stdout)
    assert document["dimension"] == 2
    assert [term["exp"] for term in document["terms"]] == [[1, 1]]
    assert json.loads(out.read_text()) == document

    result = _run(runner, "reconstruct", "--expr", "z2; z1", "--center", "1, i")
    assert result.exit_code == EXIT_OK
    terms = {tuple(t["exp"]): (t["re_exact"], t["im_exact"]) for t in json.loads(result.stdout)["terms"]}
    assert terms == {(1, 1): ("1", "0"), (0, 0): ("0", "-1")}


def test_reconstruct_refuses_non_exact_field(runner):
    result = _run(runner, "reconstruct", "--expr", "0; z1")
    assert result.exit_code == EXIT_NEGATIVE
    assert json.loads(result.stdout)["verdict"] == "not_exact"


def test_series_reconstruct(runner):
    result = _run(runner, "series-reconstruct", "--file", str(SAMPLE_DATA / "cubic_series.json"))
    assert result.exit_code == EXIT_OK
    document = json.loads(result.stdout)
    assert sorted(document["parts"]) == ["1", "2", "3"]
    assert document["truncation"] == 4

    result = _run(runner, "series-reconstruct", "--file", str(SAMPLE_DATA / "broken_series.json"))
    assert result.exit_code == EXIT_NEGATIVE
    assert json.loads(result.stdout)["failing_degree"] == 2


def test_lipnorm(runner):
    result = _run(runner, "lipnorm", "--expr", "z1*z2", "--samples", "16")
    assert result.exit_code == EXIT_OK
    estimate = json.loads(result.stdout)
    assert 1.9 < estimate["grad_dualnorm_sup"] <= 2.0 + 1e-6
    assert estimate["norm_kind"] == "sup"

    result = _run(runner, "lipnorm", "--expr", "3*z1 - 4*i*z2", "--norm", "euclid", "--samples", "8")
    assert json.loads(result.stdout)["grad_dualnorm_sup"] == pytest.approx(5.0, rel=1e-6)


def test_seed_from_environment(runner):
    result = _run(runner, "lipnorm", "--expr", "z1", "--samples", "4", env={"HOLOPOT_SEED": "7"})
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["seed"] == 7
    flag = _run(runner, "lipnorm", "--expr", "z1", "--samples", "4", "--seed", "9", env={"HOLOPOT_SEED": "7"})
    assert json.loads(flag.stdout)["seed"] == 9


def test_demo_bidisk(runner):
    result = _run(runner, "demo", "bidisk", "--radius", "0.999999", "--samples", "8")
    assert result.exit_code == EXIT_OK
    report = json.loads(result.stdout)
    assert report["f2_sup"] >= 10.0
    assert report["f1_sup"] <= 8.0

    result = _run(runner, "demo", "bidisk", "--radius", "1.5")
    assert result.exit_code == EXIT_ERROR


def _series_document(truncation, degree_key, re_exact="1"):
    return {
        "dimension": 2,
        "truncation": truncation,
        "degrees": {
            degree_key: {
                "dimension": 2,
                "components": [
                    {"terms": [{"exp": [0, 1], "re": 1.0, "im": 0.0, "re_exact": re_exact, "im_exact": "0"}]},
                    {"terms": [{"exp": [1, 0], "re": 1.0, "im": 0.0, "re_exact": re_exact, "im_exact": "0"}]},
                ],
            }
        },
    }


@pytest.mark.parametrize(
    "document, message",
    [
        (_series_document(truncation=1, degree_key="2"), "outside 1..1"),
        (_series_document(truncation=3, degree_key="two"), "degree key 'two'"),
        (_series_document(truncation=3, degree_key="2", re_exact="one"), "invalid exact coefficient 'one'"),
    ],
)
def test_malformed_series_documents_exit_with_error(runner, tmp_path, document, message):
    path = tmp_path / "series.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    result = _run(runner, "series-reconstruct", "--file", str(path))
    assert result.exit_code == EXIT_ERROR
    assert message in result.stderr
    assert result.stdout == ""


def test_bad_exact_coefficient_in_field_document(runner, tmp_path):
    document = json.loads((SAMPLE_DATA / "swap_field.json").read_text(encoding="utf-8"))
    document["components"][0]["terms"][0]["re_exact"] = "one"
    path = tmp_path / "field.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    result = _run(runner, "check-exact", "--file", str(path))
    assert result.exit_code == EXIT_ERROR
    assert "invalid exact coefficient 'one'" in result.stderr
