import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from betalac.cli import main


@pytest.fixture(scope="module")
def registry():
    schemas = {}
    root = resources.files("betalac") / "schemas"
    for entry in root.iterdir():
        if entry.name.endswith(".schema.json"):
            schemas[entry.name] = json.loads(entry.read_text())
    reg = Registry()
    for name, schema in schemas.items():
        reg = reg.with_resource(f"betalac/{name}", Resource.from_contents(schema))
    return schemas, reg


def run_cli(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def validate(registry, schema_name: str, payload: dict) -> None:
    schemas, reg = registry
    Draft202012Validator(schemas[schema_name], registry=reg).validate(payload)


CASES = [
    (["base", "classify", "--poly", "[-1,-1,1]"], "base_classify.schema.json"),
    (
        [
            "series",
            "eval",
            "--seq",
            '{"kind":"PowerFloor","params":{"rho":"2"},"m0":0}',
            "--base",
            "[-2,1]",
            "--width",
            "1e-9",
        ],
        "series_eval.schema.json",
    ),
    (
        ["digits", "expand", "--base", "[-1,-1,1]", "--eta", '["-1","1"]', "--count", "8"],
        "digits_expand.schema.json",
    ),
    (
        ["digits", "count", "--intbase", "10", "--eta", "1/3", "--count", "6", "--upto", "5"],
        "digits_count.schema.json",
    ),
    (
        ["sumset", "fold", "--elements", "0,1,4,9", "--k", "2", "--horizon", "20"],
        "sumset_fold.schema.json",
    ),
    (
        [
            "sumset",
            "gaps",
            "--seq",
            '{"kind":"PowerFloor","params":{"rho":"2"}}',
            "--k",
            "1",
            "--horizon",
            "1000",
            "--grid",
            "10:1000:5",
        ],
        "sumset_gaps.schema.json",
    ),
    (
        [
            "rho",
            "--seqs",
            '[{"kind":"PowerFloor","params":{"rho":"2"}}]',
            "--k",
            "2",
            "--horizon",
            "11",
        ],
        "rho.schema.json",
    ),
    (
        [
            "yr",
            "sweep",
            "--seqs",
            '[{"kind":"PowerFloor","params":{"rho":"2"}}]',
            "--poly-terms",
            '[{"k":[1],"coeff":["1"]}]',
            "--base",
            "[-2,1]",
            "--rmax",
            "3",
            "--width",
            "1e-9",
        ],
        "yr_sweep.schema.json",
    ),
    (["sigma", "--k", "4", "--digits", "6"], "sigma.schema.json"),
    (["check", "admissible", "--a", "4", "--rho", "6"], "check_admissible.schema.json"),
    (
        [
            "check",
            "tra1",
            "--seq",
            '{"kind":"PowerFloor","params":{"rho":"3"}}',
            "--a",
            "2",
            "--delta",
            "0.1",
            "--grid",
            "100:100000:12",
        ],
        "check_report.schema.json",
    ),
    (
        [
            "check",
            "cri2",
            "--a-seq",
            '{"kind":"LogPower","params":{"y":"0","z":"1"}}',
            "--u-seq",
            '{"kind":"LogPower","params":{"y":"1","z":"0"}}',
            "--grid",
            "100:100000:12",
        ],
        "check_report.schema.json",
    ),
    (
        ["fit", "exponent", "--points", "10:3.1622,100:10,1000:31.622,10000:100"],
        "fit_exponent.schema.json",
    ),
]


@pytest.mark.parametrize("argv,schema", CASES, ids=[" ".join(c[0][:2]) + "/" + c[1] for c in CASES])
def test_json_outputs_validate(capsys, registry, argv, schema):
    code, out = run_cli(capsys, "--format", "json", *argv)
    assert code == 0
    payload = json.loads(out)
    validate(registry, schema, payload)


def test_classify_text_output(capsys):
    code, out = run_cli(capsys, "base", "classify", "--poly", "[-1,-1,1]")
    assert code == 0
    assert out.strip() == "Pisot"
    code, out = run_cli(capsys, "base", "classify", "--poly", "[1,-1,-1,-1,1]")
    assert out.strip() == "Salem"
    code, out = run_cli(capsys, "base", "classify", "--poly", "[-2,0,1]")
    assert out.strip() == "Neither"


def test_sigma_text_output_matches_published_digits(capsys):
    code, out = run_cli(capsys, "sigma", "--k", "4", "--digits", "6")
    assert code == 0
    assert "0.189464" in out or "0.189465" in out
    assert "5.278039" in out or "5.278040" in out


def test_series_eval_value(capsys):
    code, out = run_cli(
        capsys,
        "--format",
        "json",
        "series",
        "eval",
        "--seq",
        '{"kind":"PowerFloor","params":{"rho":"2"},"m0":0}',
        "--base",
        "[-2,1]",
        "--width",
        "1e-9",
    )
    payload = json.loads(out)
    assert payload["enclosure"]["lower"].startswith("1.564468")
    assert payload["enclosure"]["upper"].startswith("1.564468")


def test_determinism_byte_identical(capsys):
    argv = [
        "--format",
        "json",
        "check",
        "cri1",
        "--seqs",
        '[{"kind":"PowerFloor","params":{"rho":"2"}},{"kind":"Geometric","params":{"x":"2"}}]',
        "--a",
        "1",
        "--grid",
        "100:100000:10",
    ]
    _, first = run_cli(capsys, *argv)
    _, second = run_cli(capsys, *argv)
    assert first == second


def test_exit_codes(capsys):
    # usage error: unknown subcommand
    with pytest.raises(SystemExit) as exc:
        main(["base", "mystery"])
    assert exc.value.code == 1
    capsys.readouterr()

    # precondition error: reducible polynomial
    code, _ = run_cli(capsys, "base", "classify", "--poly", "[-1,0,1]")
    assert code == 2

    # indeterminate admissibility tie
    code, out = run_cli(capsys, "--format", "json", "check", "admissible", "--a", "2", "--rho", "2")
    assert code == 3
    assert json.loads(out)["admissible"] is None

    # missing input file is a precondition error, not a traceback
    code, _ = run_cli(capsys, "fit", "exponent", "--csv", "/nonexistent/fit.csv")
    assert code == 2


def test_csv_output(capsys):
    code, out = run_cli(
        capsys, "--format", "csv", "sumset", "fold", "--elements", "0,1,4,9", "--k", "2", "--horizon", "20"
    )
    assert code == 0
    assert out.splitlines()[0] == "element,multiplicity"
    assert "18,1" in out


def test_output_file_and_config(tmp_path, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"precision_bits": 1024, "output_format": "json"}))
    target = tmp_path / "out.json"
    code = main(
        [
            "--config",
            str(cfg),
            "--format",
            "json",
            "--output",
            str(target),
            "sigma",
            "--k",
            "5",
            "--digits",
            "6",
        ]
    )
    assert code == 0
    payload = json.loads(target.read_text())
    assert payload["reciprocal"]["lower"].startswith("8.9429")


def test_rle_export(tmp_path, capsys):
    rle_path = tmp_path / "set.rle"
    code, _ = run_cli(
        capsys,
        "sumset",
        "fold",
        "--elements",
        "0,1,4,9",
        "--k",
        "2",
        "--horizon",
        "20",
        "--rle-out",
        str(rle_path),
    )
    assert code == 0
    from betalac.io import support_from_rle

    s = support_from_rle(rle_path.read_bytes())
    assert s.elements.tolist() == [0, 1, 2, 4, 5, 8, 9, 10, 13, 18]
