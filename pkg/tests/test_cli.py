import csv
import io
import json

import pytest

from gba import cli, scenarios
from gba.errors import UnknownScenarioError, UnsupportedFormatError


def test_registry_covers_every_statement():
    claimed = {k for sc in scenarios.REGISTRY.values() for k in sc.covers}
    assert claimed == set(scenarios.STATEMENTS)


def test_registry_entries_are_well_formed():
    for sid, sc in scenarios.REGISTRY.items():
        assert sid == sc.id and sid == sid.lower() and " " not in sid
        assert sc.basis in ("stated", "computed", "definitional")
        assert sc.summary and sc.covers


def test_unknown_scenario():
    with pytest.raises(UnknownScenarioError):
        scenarios.get("no-such-thing")
    assert cli.main(["run", "no-such-thing"]) == 1


def test_report_schema_and_determinism():
    a = cli.run("lemma-cubes", {"q": 8}).as_dict()
    b = cli.run("lemma-cubes", {"q": 8}).as_dict()
    assert a["schema"] == cli.SCHEMA
    assert {"schema", "id", "params", "status", "measured", "expected", "witness",
            "seconds"} <= set(a)
    assert a["status"] == "pass"
    assert a["measured"] == b["measured"] and a["witness"] == b["witness"]
    json.dumps(a)


def test_witness_determinism_for_a_negative_verdict():
    a = cli.run("binary-action", {"group": "PSL2(9)", "subgroup": "sylow:p=3"})
    b = cli.run("binary-action", {"group": "PSL2(9)", "subgroup": "sylow:p=3"})
    assert a.status == "pass" and a.measured["status"] == "NotBinary"
    assert a.witness == b.witness and a.witness is not None


def test_render_formats():
    r = cli.run("lemma-cubes", {"q": 8})
    rows = list(csv.reader(io.StringIO(cli.render([r], "csv"))))
    assert rows[0][:3] == ["id", "params", "status"] and rows[1][2] == "pass"
    assert cli.render([r], "dot").startswith("graph ")
    t = cli.run("trace-criteria")
    with pytest.raises(UnsupportedFormatError):
        cli.render([t], "dot")
    with pytest.raises(UnsupportedFormatError):
        cli.render([t], "xml")


def test_emit_to_directory(tmp_path):
    reps = cli.sweep("psl2-binary-classification", [4, 7])
    paths = cli.emit(reps, "json", str(tmp_path))
    assert sorted(p.name for p in paths) == ["thm-main-psl2-q4.json", "thm-main-psl2-q7.json"]
    assert json.loads(paths[0].read_text())["status"] == "pass"
    (csv_path,) = cli.emit(reps, "csv", str(tmp_path))
    assert len(csv_path.read_text().splitlines()) == 3
    assert not list(tmp_path.glob(".tmp-*"))


def test_exit_codes(capsys):
    assert cli.main(["run", "lemma-cubes", "--q", "32"]) == 0
    # a cap that cannot be met gives an unknown verdict
    assert cli.main(["run", "binary-action", "--group", "PSL2(13)", "--subgroup", "sylow:p=3",
                     "--cap-omega", "10"]) == 2
    # the class-square property has a genuine exception at q = 3
    capsys.readouterr()
    assert cli.main(["run", "prop-class-square", "--q", "3"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "fail"
    assert rep["witness"]["replay"]["params"]["q"] == 3
    assert "all_positive" in rep["witness"]["discrepancy"]


def test_q5_is_informational():
    r = cli.run("thm-main-psl2", {"q": 5})
    assert r.status == "pass" and r.expected == {"informational": True} and r.notes


def test_list_q_on_scalar_scenario_sweeps(capsys):
    assert cli.main(["run", "lemma-cubes", "--q", "8,32", "--format", "csv"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 3


def test_config_file(tmp_path, capsys, monkeypatch):
    conf = tmp_path / "gba.conf"
    conf.write_text("format = csv\ncap-omega = 10\nbogus = 1\n")
    assert cli.load_config(str(conf)) == {"format": "csv", "cap_omega": 10}
    monkeypatch.chdir(tmp_path)
    capsys.readouterr()
    code = cli.main(["run", "binary-action", "--group", "PSL2(13)", "--subgroup", "sylow:p=3"])
    assert code == 2
    assert capsys.readouterr().out.startswith("id,params,status")
    assert cli.main(["run", "lemma-cubes", "--config", str(tmp_path / "missing.conf")]) == 1


def test_list(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    assert all(sid in out for sid in scenarios.REGISTRY)


@pytest.mark.parametrize("sid", sorted(scenarios.REGISTRY))
def test_every_scenario_passes_with_defaults(sid):
    rep = cli.run(sid)
    assert rep.status == "pass", rep.as_dict()
