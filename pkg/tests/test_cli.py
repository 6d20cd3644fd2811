import json

from click.testing import CliRunner

from monge235.cli import main


def _run(*args):
    return CliRunner().invoke(main, list(args))


def test_verify_unknown_suite_exits_2():
    res = _run("verify", "--suite", "nope")
    assert res.exit_code == 2


def test_verify_linear_model_excluded():
    res = _run("verify", "--suite", "sym", "--m", "0")
    assert res.exit_code == 2
    assert "linear model excluded" in res.output


def test_verify_list_checks():
    res = _run("verify", "--list-checks")
    assert res.exit_code == 0
    ids = res.output.split()
    assert "dihedral.relations" in ids
    assert ids == sorted(ids)


def test_verify_weyl_suite_passes_and_json_is_reproducible(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    r1 = _run("verify", "--suite", "weyl", "--json", str(p1))
    r2 = _run("verify", "--suite", "weyl", "--json", str(p2))
    assert r1.exit_code == 0 and r2.exit_code == 0
    a, b = json.loads(p1.read_text()), json.loads(p2.read_text())
    for d in a + b:
        d.pop("wall_time")
    assert a == b
    assert all(d["status"] == "pass" for d in a)


def test_invariant_command():
    res = _run("invariant", "--m", "2", "--json")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["J"] == "9/25" and data["k"] == "3" and data["g2"] is True


def test_orbit_command():
    res = _run("orbit", "--m", "2")
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "-1, 1/3, 2/3, 2"
    res = _run("orbit", "--m", "1/2")
    assert res.exit_code == 2


def test_map_command():
    res = _run("map", "--name", "Ta", "--m", "2", "--point", "1,2,3,4,5")
    assert res.exit_code == 0
    assert res.output.strip() == "4, 2, 1, 1, 1/5"


def test_map_check_command():
    res = _run("map-check", "--name", "Ta", "--m", "3", "--samples", "8")
    assert res.exit_code == 0
    assert "PASS" in res.output


def test_structure_command_json():
    res = _run("structure", "--model", "ln", "--json")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["exact"] is True
    assert data["derived_series"] == [7, 5, 1, 0]
    assert data["brackets"]["[V5,V1]"] == {"V3": "-1"}


def test_growth_command():
    res = _run("growth", "--model", "Pm", "--m", "3", "--point", "1,2,3,4,5")
    assert res.exit_code == 0
    assert res.output.strip() == "2,3,5"


def test_weyl_and_stratum_commands():
    res = _run("weyl", "--coeffs", "10,9", "--json")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["orbit_size"] == 4
    assert _run("stratum", "--roots", "1,3").output.strip() == "arithmetic"
    assert _run("stratum", "--roots", "1,2").output.strip() == "generic"
