import json
import subprocess
import sys

import pytest

from uoplab.cli import RunConfig, load_root_datum, main, run
from uoplab.errors import ConfigError, InvalidDatum, ParseError
from uoplab.rootdata import preset


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def test_integrality_command(capsys):
    assert main(["integrality", "--group", "gl2", "--lambda", "1,0"]) == 0
    out = capsys.readouterr().out
    assert "gl2 lambda=1,0 degree=2" in out
    assert "0 failed" in out


def test_verify_command_with_lambda(capsys):
    assert main(["verify", "--group", "gl2", "--suites", "coeffs", "--lambda", "1,0"]) == 0
    out = capsys.readouterr().out
    assert "integrality" in out and "0 failed" in out


def test_tree_command(capsys):
    assert main(["tree", "--q", "3", "--depth", "8"]) == 0
    assert "0 failed" in capsys.readouterr().out


def test_lambda_outside_cone_gives_guidance(capsys):
    assert main(["integrality", "--group", "gl2", "--lambda", "0,1"]) == 2
    err = capsys.readouterr().err
    assert "NotAntidominant" in err and "--lambda 1,0" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--group", "e8"],
        ["verify", "--suites", "nonsense"],
        ["tree", "--q", "1"],
        ["tree", "--depth", "1"],
        ["integrality", "--lambda", "1,x"],
        ["integrality", "--lambda", "1,0,0"],
    ],
)
def test_configuration_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("uoplab: error:")


def test_json_output(capsys):
    assert main(["integrality", "--group", "gl2", "--lambda", "1,1", "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert doc["config"]["lambda"] == [1, 1]
    assert doc["certificates"][0]["degree"] == 1


def test_emit_cert(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert main(["integrality", "--group", "gl2", "--lambda", "1,0", "--emit-cert", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["lambda"] == [1, 0] and doc["degree"] == 2


def test_datum_round_trip(tmp_path, capsys):
    assert main(["datum", "--group", "sp4"]) == 0
    path = write(tmp_path, "sp4.json", capsys.readouterr().out)
    d = load_root_datum(path)
    assert d == preset("sp4")
    assert len(d.weyl) == 8
    assert main(["integrality", "--group", str(path), "--lambda", "1,0"]) == 0


def test_invalid_pairing_in_file(tmp_path):
    path = write(tmp_path, "bad.json", {"rank": 1, "simple_roots": [[3]], "positive_roots": [[3]],
                                        "positive_coroots": [[1]]})
    with pytest.raises(InvalidDatum):
        load_root_datum(path)
    assert main(["verify", "--group", str(path)]) == 2


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[1, 2]",
        json.dumps({"rank": 1, "simple_roots": [[2]]}),
        json.dumps({"rank": "one", "simple_roots": [[2]], "positive_roots": [[2]], "positive_coroots": [[1]]}),
        json.dumps({"rank": 1, "simple_roots": [[2.5]], "positive_roots": [[2]], "positive_coroots": [[1]]}),
    ],
)
def test_parse_errors(tmp_path, text):
    with pytest.raises(ParseError):
        load_root_datum(write(tmp_path, "x.json", text))


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(output="yaml").validate()
    with pytest.raises(ConfigError):
        RunConfig(box=-1).validate()


def test_parallel_matches_serial():
    cfg = dict(group="gl2", suites=("coeffs", "rootdata", "integrality"), seed=3)
    code_a, a = run(RunConfig(**cfg))
    code_b, b = run(RunConfig(parallel=True, **cfg))
    assert code_a == code_b == 0
    assert [(r.name, r.passed) for r in a.results] == [(r.name, r.passed) for r in b.results]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "uoplab.cli", "integrality", "--group", "sl2", "--lambda", "1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
