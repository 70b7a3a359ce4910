import json
import subprocess
import sys

import pytest

from fanoforms.cli import RunManifest, digest, main, run


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_bott_json(capsys):
    code, out = run_json(capsys, "bott", "--grassmannian", "2,8", "--sub=-1,-1")
    assert code == 0
    assert out["q"] == 0 and out["dim"] == 28


def test_globals_after_subcommand(capsys):
    code, out = run_json(capsys, "pfaffian", "constants", "--n", "4", "--seed", "3")
    assert code == 0
    assert out["catalan_degree"] == 5 and out["c_n"] == 4 and out["crepant"]


def test_schur_ext_power(capsys):
    code, out = run_json(capsys, "schur", "ext-power", "--d", "4", "--i", "2")
    assert code == 0 and out


def test_hypersurface(capsys):
    code, out = run_json(capsys, "hodge", "hypersurface", "--N", "7", "--d", "4")
    assert code == 0
    assert "266" in json.dumps(out) and "1108" in json.dumps(out)


def test_orbit_table(capsys):
    code, out = run_json(capsys, "reproduce", "orbit-table")
    assert code == 0 and out["pass"]
    rows = {r["form"]: r for r in out["rows"]}
    assert rows["alpha4"]["orbit"] == "O7"


def test_cohvan_and_vanishing(capsys):
    assert run_json(capsys, "reproduce", "cohvan", "--n", "3", "--k", "2")[1]["pass"]
    assert run_json(capsys, "reproduce", "gr2-vanishing", "--n", "3")[1]["pass"]


def test_forms_classify_file(tmp_path, capsys):
    form = tmp_path / "f.json"
    form.write_text(json.dumps({"degree": 4, "n": 7, "terms": [{"indices": [1, 2, 3, 4], "coeff": 1}]}))
    code, out = run_json(capsys, "forms", "classify", str(form))
    assert code == 0 and out["orbit"] == "O1"


def test_manifest_replay(tmp_path, capsys):
    man = tmp_path / "m.json"
    assert main(["--json", "--manifest-out", str(man), "reproduce", "cohvan", "--n", "3"]) == 0
    first = json.loads(capsys.readouterr().out)
    stored = RunManifest.load(man)
    assert stored.results_digest == digest(first)
    assert "--seed" in stored.command and "--prime" in stored.command
    code, out = run_json(capsys, "replay", str(man))
    assert code == 0 and out["identical"]

    stored.results_digest = "0" * 64
    stored.dump(man)
    code, out = run_json(capsys, "replay", str(man))
    assert code == 1 and not out["identical"]


def test_seed_fixes_prime():
    a, args_a = run(["--seed", "5", "pfaffian", "constants"])
    b, args_b = run(["pfaffian", "constants", "--seed", "5"])
    assert args_a.prime == args_b.prime and a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fanoforms", "pfaffian", "constants", "--n", "3"],
                          capture_output=True, text=True, check=True)
    assert "catalan_degree: 2" in proc.stdout


def test_bad_arguments():
    with pytest.raises(SystemExit):
        main(["schur", "nonsense"])
