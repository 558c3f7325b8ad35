import json

import pytest

from aicwb import cli
from aicwb.cli import Report, ScenarioSpec, emit_report, main, parse_ring_text, run_scenario
from aicwb.errors import ParseError


def run_json(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_inline_ring_forms():
    assert parse_ring_text("QQ[X,Y]/(X)(Y)").describe()["generators"] == {"X": ["0", "X"], "Y": ["Y", "0"]}
    assert len(parse_ring_text("GF(2)[X,Y]/(X)(Y)(X+Y)").components) == 3
    assert parse_ring_text("QQ[Y]").describe()["components"] == [{"tag": "(0)", "domain": "QQ[Y]"}]
    assert parse_ring_text("Z/4").kind == "finite"
    assert parse_ring_text("Z/2 x Z/2").finite_ring.name == "Z/2 x Z/2"
    assert parse_ring_text("GF(4)").kind == "finite"
    assert parse_ring_text("GF(5)").kind == "subdirect"


def test_yaml_ring_document(tmp_path):
    doc = tmp_path / "ring.yaml"
    doc.write_text(
        "kind: subdirect\nfield: QQ\ncomponents:\n  - {tag: '(X)', var: Y}\n  - {tag: '(Y)', var: X}\n"
        "generators:\n  X: ['0', 'X']\n  Y: ['Y', '0']\n"
    )
    R = parse_ring_text(str(doc))
    assert [c.tag for c in R.components] == ["(X)", "(Y)"]
    doc.write_text("kind: factored\nfield: GF(3)\nfactors: [X, Y]\n")
    assert parse_ring_text(str(doc)).describe()["field"] == "GF(3)"


def test_bad_inputs():
    with pytest.raises(ParseError):
        parse_ring_text("QQ[X,Y]/X*Y")
    with pytest.raises(ParseError):
        ScenarioSpec("no-such-scenario", "QQ")
    with pytest.raises(ParseError):
        ScenarioSpec("build-aic", "QQ", budget=0)


def test_flagship_report_fields(capsys):
    code, data = run_json(["nonunique-aic", "--ring", "QQ[X,Y]/(X)(Y)"], capsys)
    assert code == 0 and data["schema"] == "aicwb/1"
    res = data["results"][0]
    assert res["idempotent_count_T"] == 4 and res["idempotent_count_T0"] == 2
    assert res["rejected_element"] == {"element": [1, 0], "phi": "1", "psi": "0"}
    assert res["verdict"] == "non-isomorphic aics exhibited"


def test_domain_report(capsys):
    code, data = run_json(["nonunique-aic", "--ring", "QQ[Y]"], capsys)
    assert code == 0
    assert data["results"][0]["verdict"] == "no non-comaximal minimal pair; unique aic"


def test_fol_evidence_z4(capsys):
    code, data = run_json(["fol-evidence", "--ring", "Z/4", "--max-n", "1", "--max-m", "1"], capsys)
    assert code == 0
    assert data["results"][0]["gamma_consistency_witness"] == [1, 0]


@pytest.mark.parametrize("scenario", ["minimal-primes", "idempotents", "build-aic", "pullback"])
def test_other_scenarios_pass(scenario, capsys):
    code, data = run_json([scenario, "--ring", "QQ[X,Y]/(X)(Y)"], capsys)
    assert code == 0 and data["passed"]


def test_text_format(capsys):
    assert main(["minimal-primes", "--ring", "QQ[X,Y]/(X)(Y)", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("minimal-primes: PASS") and '"(X)"' in out


def test_output_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["idempotents", "--ring", "Z/36", "--output", str(path)]) == 0
    assert json.loads(path.read_text())["results"][0]["members"] == [0, 1, 9, 28]


def test_exit_codes(capsys, monkeypatch):
    assert main(["build-aic", "--ring", "QQ[X,Y]/(X"]) == 2
    assert main(["build-aic", "--ring", "QQ[X,Y]/(X)(Y)", "--poly", "Z^3 - X - Y - 2", "--budget", "2"]) == 3

    def failing(R, spec, report):
        report.check("deliberately false", False)

    monkeypatch.setitem(cli.RUNNERS, "minimal-primes", failing)
    assert main(["minimal-primes", "--ring", "QQ"]) == 1
    with pytest.raises(SystemExit) as info:
        main(["no-such-scenario"])
    assert info.value.code == 2


def test_empty_report_is_valid_json():
    data = json.loads(emit_report(Report("minimal-primes", {}, {})))
    assert data["results"] == [] and data["passed"] is True


def test_same_spec_same_bytes():
    spec = ScenarioSpec("tightness", "QQ[X,Y]/(X)(Y)", samples=5, seed=3)
    assert emit_report(run_scenario(spec)) == emit_report(run_scenario(spec))
